#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "levelplan/reductions.hpp"

namespace levelplan::reductions {

namespace {

std::string lvl(int l) { return std::to_string(l); }

bool connected_without(const std::vector<std::string>& vertices, const std::vector<Edge>& edges,
                       const std::string& removed) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : edges) {
    if (e.u == removed || e.v == removed) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::string start;
  std::size_t total = 0;
  for (const auto& v : vertices) {
    if (v == removed) continue;
    if (start.empty()) start = v;
    ++total;
  }
  if (total == 0) return true;
  std::set<std::string> seen{start};
  std::vector<std::string> stack{start};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto& y : adj[x]) {
      if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return seen.size() == total;
}

}  // namespace

bool is_biconnected(const std::vector<std::string>& vertices, const std::vector<Edge>& edges) {
  if (!connected_without(vertices, edges, "")) return false;
  return std::all_of(vertices.begin(), vertices.end(),
                     [&](const std::string& v) { return connected_without(vertices, edges, v); });
}

SefeReduction reduce_tlp_to_sefe(const TLevelInstance& t) {
  if (!validate_instance(t).empty()) throw PreconditionError("reduce_tlp_to_sefe: invalid instance");
  if (!is_proper(t.graph)) throw PreconditionError("reduce_tlp_to_sefe: instance is not proper");
  const TLevelInstance n = normalize_trees(t);
  const int k = n.graph.levels;
  auto levels = level_map(n.graph);
  auto members = level_members(n.graph);
  for (auto& row : members) std::sort(row.begin(), row.end());

  std::map<std::string, std::vector<std::string>> up, down;
  for (const auto& e : n.graph.edges) {
    auto [a, b] = levels.at(e.u) < levels.at(e.v) ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
    up[a].push_back(b);
    down[b].push_back(a);
  }
  for (auto& [x, ys] : up) std::sort(ys.begin(), ys.end());
  for (auto& [x, ys] : down) std::sort(ys.begin(), ys.end());

  std::vector<const TreeNode*> roots(static_cast<std::size_t>(k), nullptr);
  for (const auto& tree : n.trees) roots[static_cast<std::size_t>(tree.level)] = &tree.root;

  SefeReduction out;
  auto& s = out.instance;
  auto& prov = out.provenance;
  std::set<std::string> ids;
  auto vertex = [&](const std::string& id, std::string role, std::map<std::string, std::string> src) {
    if (!ids.insert(id).second) throw Error("reduce_tlp_to_sefe: generated id collides: " + id);
    s.vertices.push_back(id);
    prov.entries[id] = ProvenanceEntry{std::move(role), std::move(src)};
  };
  auto common = [&](const std::string& a, const std::string& b) {
    s.e1.push_back(Edge{a, b});
    s.e2.push_back(Edge{a, b});
  };

  auto t_id = [](int l) { return "t:" + lvl(l); };
  auto p_id = [](int l) { return "p:" + lvl(l); };
  auto q_id = [](int l) { return "q:" + lvl(l); };
  std::map<std::string, std::string> copy;  // level vertex -> its tree-copy leaf

  // Cycle t_0..t_{k-1}, q_{k-1}, p_{k-1}, ..., q_0, p_0.
  for (int l = 0; l < k; ++l) {
    std::map<std::string, std::string> src{{"level", lvl(l)}};
    const TreeNode* root = roots[static_cast<std::size_t>(l)];
    if (root->leaf) {
      src["vertex"] = root->id;
      copy[root->id] = t_id(l);
    } else {
      src["node"] = root->id;
    }
    vertex(t_id(l), "cycle-t", src);
  }
  for (int l = k - 1; l >= 0; --l) {
    vertex(q_id(l), "cycle-q", {{"level", lvl(l)}});
    vertex(p_id(l), "cycle-p", {{"level", lvl(l)}});
  }
  std::vector<std::string> cycle;
  for (int l = 0; l < k; ++l) cycle.push_back(t_id(l));
  for (int l = k - 1; l >= 0; --l) {
    cycle.push_back(q_id(l));
    cycle.push_back(p_id(l));
  }
  for (std::size_t i = 0; i < cycle.size(); ++i) common(cycle[i], cycle[(i + 1) % cycle.size()]);

  // Tree copies rooted at t_l.
  for (int l = 0; l < k; ++l) {
    const TreeNode* root = roots[static_cast<std::size_t>(l)];
    if (root->leaf) continue;
    std::function<void(const TreeNode&, const std::string&)> walk = [&](const TreeNode& node, const std::string& id) {
      for (const auto& c : node.children) {
        std::string cid;
        if (c.leaf) {
          cid = "T:" + c.id;
          vertex(cid, "tree-leaf", {{"level", lvl(l)}, {"vertex", c.id}});
          copy[c.id] = cid;
        } else {
          cid = "T:" + lvl(l) + ":" + c.id;
          vertex(cid, "tree-node", {{"level", lvl(l)}, {"node", c.id}});
        }
        common(id, cid);
        walk(c, cid);
      }
    };
    walk(*root, t_id(l));
  }

  // Stars: one P leaf per vertex with a lower neighbour, one Q leaf per
  // vertex with an upper neighbour.
  for (int l = 0; l < k; ++l) {
    for (const auto& u : members[static_cast<std::size_t>(l)]) {
      if (down.count(u)) {
        vertex("P:" + u, "star-p", {{"level", lvl(l)}, {"vertex", u}});
        common(p_id(l), "P:" + u);
      }
      if (up.count(u)) {
        vertex("Q:" + u, "star-q", {{"level", lvl(l)}, {"vertex", u}});
        common(q_id(l), "Q:" + u);
      }
    }
  }

  // Private edges.  With 1-based level index i = l + 1: for even i the first
  // graph links tree leaves to Q_i and holds the P_i - Q_{i-1} edges; for odd
  // i the roles of the two graphs swap.
  for (int l = 0; l < k; ++l) {
    const bool even = (l + 1) % 2 == 0;
    auto& q_side = even ? s.e1 : s.e2;
    auto& p_side = even ? s.e2 : s.e1;
    for (const auto& u : members[static_cast<std::size_t>(l)]) {
      q_side.push_back(Edge{copy.at(u), up.count(u) ? "Q:" + u : q_id(l)});
      p_side.push_back(Edge{copy.at(u), down.count(u) ? "P:" + u : p_id(l)});
      if (down.count(u)) {
        for (const auto& v : down.at(u)) q_side.push_back(Edge{"P:" + u, "Q:" + v});
      }
    }
  }
  for (auto* edges : {&s.e1, &s.e2}) {
    for (auto& e : *edges) e = canonical(e);
    std::sort(edges->begin(), edges->end());
  }
  std::sort(s.vertices.begin(), s.vertices.end());
  return out;
}

SefeStructure check_sefe_structure(const SefeInstance& s, const TLevelInstance& source) {
  SefeStructure r;
  r.g1_biconnected = is_biconnected(s.vertices, s.e1);
  r.g2_biconnected = is_biconnected(s.vertices, s.e2);
  r.common_connected = connected_without(s.vertices, common_edges(s), "");
  r.vertices = s.vertices.size();
  for (const auto& tree : normalize_trees(source).trees) r.tree_nodes += tree.root.node_count();
  r.source_edges = source.graph.edges.size();
  r.g1_edges = s.e1.size();
  r.g2_edges = s.e2.size();
  return r;
}

namespace {

TreeNode* find_node(TreeNode& n, const std::string& id) {
  if (!n.leaf && n.id == id) return &n;
  for (auto& c : n.children) {
    if (auto* hit = find_node(c, id)) return hit;
  }
  return nullptr;
}

// Post-order over internal nodes, children visited in id order.
void bottom_up(const TreeNode& n, std::vector<std::string>& out) {
  if (n.leaf) return;
  std::vector<const TreeNode*> kids;
  for (const auto& c : n.children) {
    if (!c.leaf) kids.push_back(&c);
  }
  std::sort(kids.begin(), kids.end(), [](const TreeNode* a, const TreeNode* b) { return a->id < b->id; });
  for (const auto* c : kids) bottom_up(*c, out);
  out.push_back(n.id);
}

}  // namespace

CLReduction make_level_connected(const CLInstance& c) {
  if (!validate_instance(c).empty()) throw PreconditionError("make_level_connected: invalid instance");
  if (!is_proper(c.graph)) throw PreconditionError("make_level_connected: instance is not proper");
  auto levels = level_map(c.graph);
  auto parents = leaf_parents(c.hierarchy);

  CLReduction out;
  auto& g = out.instance.graph;
  auto& h = out.instance.hierarchy;
  auto& prov = out.provenance;
  h = c.hierarchy;
  g.levels = 3 * c.graph.levels - 2;
  if (c.graph.levels == 0) g.levels = 0;
  std::set<std::string> ids;
  auto vertex = [&](const std::string& id, int level, std::string role, std::map<std::string, std::string> src) {
    if (!ids.insert(id).second) throw Error("make_level_connected: generated id collides: " + id);
    g.vertices.push_back(Vertex{id, level});
    prov.entries[id] = ProvenanceEntry{std::move(role), std::move(src)};
  };
  auto adopt = [&](const std::string& parent, const std::string& id) {
    TreeNode* node = find_node(h.root, parent);
    if (!node) throw Error("make_level_connected: missing cluster " + parent);
    node->children.push_back(TreeNode::make_leaf(id));
  };

  for (const auto& v : c.graph.vertices) vertex(v.id, 3 * v.level, "original", {{"level", lvl(v.level)}});

  // Step 1: stretch levels by three and split every edge into a 3-path.
  for (const auto& e : c.graph.edges) {
    auto [u, v] = levels.at(e.u) < levels.at(e.v) ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
    const int l = levels.at(u);
    const std::string key = u + "|" + v;
    const std::string du = "du:" + key, dv = "dv:" + key;
    vertex(du, 3 * l + 1, "dummy-du", {{"edge", key}, {"endpoint", u}});
    vertex(dv, 3 * l + 2, "dummy-dv", {{"edge", key}, {"endpoint", v}});
    g.edges.push_back(Edge{u, du});
    g.edges.push_back(Edge{du, dv});
    g.edges.push_back(Edge{dv, v});
    adopt(parents.at(u), du);
    adopt(parents.at(v), dv);
  }

  // Step 2: close every remaining gap with a connector edge inside the cluster.
  std::vector<std::string> order;
  bottom_up(h.root, order);
  for (const auto& cluster : order) {
    auto conn = is_level_connected(out.instance);
    for (const auto& gap : conn.gaps) {
      if (gap.cluster != cluster) continue;
      const std::string base = "c:" + cluster + ":" + lvl(gap.level);
      std::map<std::string, std::string> src{{"cluster", cluster}, {"level", lvl(gap.level)}};
      vertex(base + ":u", gap.level, "connector-u", src);
      vertex(base + ":v", gap.level + 1, "connector-v", src);
      g.edges.push_back(Edge{base + ":u", base + ":v"});
      adopt(cluster, base + ":u");
      adopt(cluster, base + ":v");
    }
  }
  return out;
}

TLevelInstance clusters_to_trees(const CLInstance& c) {
  if (!validate_instance(c).empty()) throw PreconditionError("clusters_to_trees: invalid instance");
  if (!is_proper(c.graph)) throw PreconditionError("clusters_to_trees: instance is not proper");
  if (!is_level_connected(c).connected) throw PreconditionError("clusters_to_trees: instance is not level-connected");
  auto levels = level_map(c.graph);

  TLevelInstance t;
  t.graph = c.graph;
  for (int l = 0; l < c.graph.levels; ++l) {
    std::function<std::optional<TreeNode>(const TreeNode&)> restrict = [&](const TreeNode& n) -> std::optional<TreeNode> {
      if (n.leaf) {
        if (levels.at(n.id) == l) return n;
        return std::nullopt;
      }
      std::vector<TreeNode> kept;
      for (const auto& ch : n.children) {
        if (auto r = restrict(ch)) kept.push_back(std::move(*r));
      }
      if (kept.empty()) return std::nullopt;
      return TreeNode::make_node(n.id, std::move(kept));
    };
    auto root = restrict(c.hierarchy.root);
    if (!root) throw PreconditionError("clusters_to_trees: empty level " + lvl(l));
    t.trees.push_back(ConstraintTree{l, normalize_tree(std::move(*root))});
  }
  return t;
}

Decision decide_proper_tlp(const TLevelInstance& t, Backend backend, const Budgets& budgets) {
  if (!validate_instance(t).empty()) throw PreconditionError("decide_proper_tlp: invalid instance");
  if (!is_proper(t.graph)) throw PreconditionError("decide_proper_tlp: instance is not proper");
  Decision d;
  d.note = kBackendNote;
  if (backend == Backend::DirectOracle) {
    d.certificate = oracles::solve_tlp_exhaustive(t, budgets);
  } else {
    auto red = reduce_tlp_to_sefe(t);
    auto result = oracles::solve_sefe_exhaustive(red.instance, budgets);
    if (result.embeddable) {
      d.certificate = oracles::decode_sefe_to_orderings(red.instance, red.provenance, *result.witness);
      if (!oracles::is_tlevel_witness(t, *d.certificate))
        throw Error("decide_proper_tlp: decoded ordering failed re-check");
    }
  }
  d.planar = d.certificate.has_value();
  return d;
}

Decision decide_proper_cl(const CLInstance& c, const Budgets& budgets, Backend backend) {
  if (!validate_instance(c).empty()) throw PreconditionError("decide_proper_cl: invalid instance");
  if (!is_proper(c.graph)) throw PreconditionError("decide_proper_cl: instance is not proper");
  auto connected = make_level_connected(c);
  auto t = clusters_to_trees(connected.instance);
  Decision d = decide_proper_tlp(t, backend, budgets);
  if (!d.certificate) return d;

  // Project back: original level l sits at 3l; drop dummies and connectors.
  std::set<std::string> original;
  for (const auto& v : c.graph.vertices) original.insert(v.id);
  LevelOrdering projected;
  for (int l = 0; l < c.graph.levels; ++l) {
    std::vector<std::string> row;
    for (const auto& x : d.certificate->levels[static_cast<std::size_t>(3 * l)]) {
      if (original.count(x)) row.push_back(x);
    }
    projected.levels.push_back(std::move(row));
  }
  if (!oracles::ordering_is_crossing_free(c.graph, projected) || !oracles::clusters_consecutive(c, projected))
    throw Error("decide_proper_cl: projected certificate failed re-check");
  d.certificate = std::move(projected);
  return d;
}

}  // namespace levelplan::reductions
