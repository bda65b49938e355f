#include "levelplan/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <utility>

namespace levelplan {

Edge canonical(const Edge& e) {
  if (e.v < e.u) return Edge{e.v, e.u};
  return e;
}

std::map<std::string, int> level_map(const LevelGraph& g) {
  std::map<std::string, int> out;
  for (const auto& v : g.vertices) out.emplace(v.id, v.level);
  return out;
}

std::vector<std::vector<std::string>> level_members(const LevelGraph& g) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(std::max(g.levels, 0)));
  for (const auto& v : g.vertices) {
    if (v.level >= 0 && v.level < g.levels) out[static_cast<std::size_t>(v.level)].push_back(v.id);
  }
  return out;
}

TreeNode TreeNode::make_leaf(std::string id) {
  TreeNode n;
  n.id = std::move(id);
  n.leaf = true;
  return n;
}

TreeNode TreeNode::make_node(std::string id, std::vector<TreeNode> children) {
  TreeNode n;
  n.id = std::move(id);
  n.children = std::move(children);
  return n;
}

std::vector<std::string> TreeNode::leaves() const {
  std::vector<std::string> out;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& n) {
    if (n.leaf) {
      out.push_back(n.id);
      return;
    }
    for (const auto& c : n.children) walk(c);
  };
  walk(*this);
  return out;
}

std::size_t TreeNode::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

std::vector<Edge> common_edges(const SefeInstance& s) {
  std::map<Edge, int> count;
  for (const auto& e : s.e1) ++count[canonical(e)];
  std::vector<Edge> out;
  for (const auto& e : s.e2) {
    auto it = count.find(canonical(e));
    if (it != count.end() && it->second > 0) {
      --it->second;
      out.push_back(canonical(e));
    }
  }
  return out;
}

namespace {

void add(ValidationReport& r, std::string code, std::string detail) {
  r.push_back(Violation{std::move(code), std::move(detail)});
}

std::string edge_str(const Edge& e) { return "(" + e.u + "," + e.v + ")"; }

// Checks shape of a tree: leaves have no children, internal nodes have some,
// internal ids are unique.  Collects leaves.
void check_tree_shape(const TreeNode& root, const std::string& where, ValidationReport& r,
                      std::vector<std::string>& leaves) {
  std::set<std::string> internal_ids;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& n) {
    if (n.leaf) {
      if (!n.children.empty()) add(r, "leaf-with-children", where + ": leaf " + n.id);
      leaves.push_back(n.id);
      return;
    }
    if (n.children.empty()) add(r, "empty-internal-node", where + ": node " + n.id);
    if (!internal_ids.insert(n.id).second) add(r, "duplicate-node-id", where + ": node " + n.id);
    for (const auto& c : n.children) walk(c);
  };
  walk(root);
}

}  // namespace

ValidationReport validate_instance(const LevelGraph& g) {
  ValidationReport r;
  if (g.levels < 0) add(r, "negative-level-count", std::to_string(g.levels));
  if (!g.original_levels.empty() && static_cast<int>(g.original_levels.size()) != g.levels)
    add(r, "bad-level-metadata", "original_levels size differs from level count");

  std::map<std::string, int> levels;
  std::vector<bool> occupied(static_cast<std::size_t>(std::max(g.levels, 0)), false);
  for (const auto& v : g.vertices) {
    if (v.id.empty()) add(r, "empty-id", "vertex with empty id");
    if (!levels.emplace(v.id, v.level).second) add(r, "duplicate-vertex", v.id);
    if (v.level < 0 || v.level >= g.levels) {
      add(r, "level-out-of-range", v.id + " at level " + std::to_string(v.level));
    } else {
      occupied[static_cast<std::size_t>(v.level)] = true;
    }
  }
  for (int i = 0; i < g.levels; ++i) {
    if (!occupied[static_cast<std::size_t>(i)]) add(r, "empty-level", "level " + std::to_string(i));
  }

  std::set<Edge> seen;
  for (const auto& e : g.edges) {
    auto iu = levels.find(e.u);
    auto iv = levels.find(e.v);
    if (iu == levels.end()) add(r, "unknown-vertex", "edge " + edge_str(e) + " endpoint " + e.u);
    if (iv == levels.end()) add(r, "unknown-vertex", "edge " + edge_str(e) + " endpoint " + e.v);
    if (e.u == e.v) {
      add(r, "self-loop", edge_str(e));
    } else if (iu != levels.end() && iv != levels.end() && iu->second == iv->second) {
      add(r, "intra-level-edge", edge_str(e));
    }
    if (!seen.insert(canonical(e)).second) add(r, "duplicate-edge", edge_str(e));
  }
  return r;
}

ValidationReport validate_instance(const TLevelInstance& t) {
  ValidationReport r = validate_instance(t.graph);
  auto levels = level_map(t.graph);
  std::vector<int> tree_count(static_cast<std::size_t>(std::max(t.graph.levels, 0)), 0);
  for (const auto& tree : t.trees) {
    const std::string where = "tree of level " + std::to_string(tree.level);
    if (tree.level < 0 || tree.level >= t.graph.levels) {
      add(r, "tree-level-out-of-range", where);
      continue;
    }
    ++tree_count[static_cast<std::size_t>(tree.level)];
    std::vector<std::string> leaves;
    check_tree_shape(tree.root, where, r, leaves);
    std::set<std::string> leaf_set;
    for (const auto& l : leaves) {
      if (!leaf_set.insert(l).second) add(r, "tree-leaf-duplicate", where + ": " + l);
      auto it = levels.find(l);
      if (it == levels.end()) {
        add(r, "tree-leaf-unknown", where + ": " + l);
      } else if (it->second != tree.level) {
        add(r, "tree-leaf-wrong-level", where + ": " + l);
      }
    }
    for (const auto& v : t.graph.vertices) {
      if (v.level == tree.level && !leaf_set.count(v.id)) add(r, "tree-leaf-missing", where + ": " + v.id);
    }
  }
  for (int i = 0; i < t.graph.levels; ++i) {
    int n = tree_count[static_cast<std::size_t>(i)];
    if (n == 0) add(r, "tree-level-missing", "level " + std::to_string(i));
    if (n > 1) add(r, "tree-level-duplicate", "level " + std::to_string(i));
  }
  return r;
}

ValidationReport validate_instance(const CLInstance& c) {
  ValidationReport r = validate_instance(c.graph);
  auto levels = level_map(c.graph);
  std::vector<std::string> leaves;
  check_tree_shape(c.hierarchy.root, "cluster hierarchy", r, leaves);
  std::set<std::string> leaf_set;
  for (const auto& l : leaves) {
    if (!leaf_set.insert(l).second) add(r, "cluster-leaf-duplicate", l);
    if (!levels.count(l)) add(r, "cluster-leaf-unknown", l);
  }
  for (const auto& v : c.graph.vertices) {
    if (!leaf_set.count(v.id)) add(r, "cluster-leaf-missing", v.id);
  }
  return r;
}

ValidationReport validate_instance(const SefeInstance& s) {
  ValidationReport r;
  std::set<std::string> ids;
  for (const auto& v : s.vertices) {
    if (v.empty()) add(r, "empty-id", "vertex with empty id");
    if (!ids.insert(v).second) add(r, "duplicate-vertex", v);
  }
  auto check = [&](const std::vector<Edge>& edges, const std::string& which) {
    for (const auto& e : edges) {
      if (!ids.count(e.u)) add(r, "unknown-vertex", which + " edge " + edge_str(e) + " endpoint " + e.u);
      if (!ids.count(e.v)) add(r, "unknown-vertex", which + " edge " + edge_str(e) + " endpoint " + e.v);
      if (e.u == e.v) add(r, "self-loop", which + " " + edge_str(e));
    }
  };
  check(s.e1, "e1");
  check(s.e2, "e2");
  return r;
}

bool is_proper(const LevelGraph& g) {
  auto levels = level_map(g);
  return std::all_of(g.edges.begin(), g.edges.end(), [&](const Edge& e) {
    return std::abs(levels.at(e.u) - levels.at(e.v)) == 1;
  });
}

std::vector<ClusterInfo> cluster_infos(const ClusterHierarchy& h, const LevelGraph& g) {
  auto levels = level_map(g);
  std::vector<ClusterInfo> out;
  std::function<std::set<std::string>(const TreeNode&, int, const std::optional<std::string>&)> walk =
      [&](const TreeNode& n, int depth, const std::optional<std::string>& parent) {
        if (n.leaf) return std::set<std::string>{n.id};
        std::size_t slot = out.size();
        out.push_back(ClusterInfo{n.id, {}, 0, 0, depth, parent});
        std::set<std::string> members;
        for (const auto& c : n.children) {
          auto sub = walk(c, depth + 1, n.id);
          members.insert(sub.begin(), sub.end());
        }
        int lo = 0, hi = -1;
        bool first = true;
        for (const auto& m : members) {
          auto it = levels.find(m);
          if (it == levels.end()) continue;
          if (first || it->second < lo) lo = it->second;
          if (first || it->second > hi) hi = it->second;
          first = false;
        }
        out[slot].members = members;
        out[slot].min_level = lo;
        out[slot].max_level = hi;
        return members;
      };
  walk(h.root, 0, std::nullopt);
  return out;
}

std::map<std::string, std::string> leaf_parents(const ClusterHierarchy& h) {
  std::map<std::string, std::string> out;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& n) {
    for (const auto& c : n.children) {
      if (c.leaf) {
        out[c.id] = n.id;
      } else {
        walk(c);
      }
    }
  };
  if (!h.root.leaf) walk(h.root);
  return out;
}

LevelConnectivity is_level_connected(const CLInstance& c) {
  if (!is_proper(c.graph)) throw PreconditionError("is_level_connected: instance is not proper");
  auto levels = level_map(c.graph);
  LevelConnectivity out;
  for (const auto& info : cluster_infos(c.hierarchy, c.graph)) {
    std::set<int> linked;  // lower level of every cluster-internal edge
    for (const auto& e : c.graph.edges) {
      if (!info.members.count(e.u) || !info.members.count(e.v)) continue;
      linked.insert(std::min(levels.at(e.u), levels.at(e.v)));
    }
    for (int i = info.min_level; i < info.max_level; ++i) {
      if (!linked.count(i)) out.gaps.push_back(LevelGap{info.id, i});
    }
  }
  out.connected = out.gaps.empty();
  return out;
}

TreeNode normalize_tree(TreeNode t) {
  if (t.leaf) return t;
  for (auto& c : t.children) c = normalize_tree(std::move(c));
  if (t.children.size() == 1) {
    TreeNode only = std::move(t.children.front());
    return only;
  }
  return t;
}

TLevelInstance normalize_trees(TLevelInstance t) {
  for (auto& tree : t.trees) tree.root = normalize_tree(std::move(tree.root));
  return t;
}

ClusterHierarchy normalize_trees(ClusterHierarchy h) {
  h.root = normalize_tree(std::move(h.root));
  return h;
}

namespace {

// Returns old-level -> new-level for every occupied level.
std::map<int, int> compaction(const LevelGraph& g) {
  std::set<int> occupied;
  for (const auto& v : g.vertices) occupied.insert(v.level);
  std::map<int, int> remap;
  int next = 0;
  for (int l : occupied) remap[l] = next++;
  return remap;
}

}  // namespace

LevelGraph normalize_levels(LevelGraph g) {
  auto remap = compaction(g);
  std::vector<int> original;
  original.reserve(remap.size());
  for (const auto& [old_level, new_level] : remap) {
    (void)new_level;
    bool has_meta = !g.original_levels.empty() && old_level >= 0 &&
                    old_level < static_cast<int>(g.original_levels.size());
    original.push_back(has_meta ? g.original_levels[static_cast<std::size_t>(old_level)] : old_level);
  }
  for (auto& v : g.vertices) v.level = remap.at(v.level);
  g.levels = static_cast<int>(remap.size());
  bool identity = true;
  for (int i = 0; i < g.levels; ++i) identity = identity && original[static_cast<std::size_t>(i)] == i;
  g.original_levels = identity ? std::vector<int>{} : original;
  return g;
}

TLevelInstance normalize_levels(TLevelInstance t) {
  auto remap = compaction(t.graph);
  for (auto& tree : t.trees) {
    auto it = remap.find(tree.level);
    tree.level = it == remap.end() ? -1 : it->second;
  }
  t.graph = normalize_levels(std::move(t.graph));
  return t;
}

CLInstance normalize_levels(CLInstance c) {
  c.graph = normalize_levels(std::move(c.graph));
  return c;
}

std::string dummy_id(const std::string& lower, const std::string& upper, int level) {
  return lower + "|" + upper + "#" + std::to_string(level);
}

Subdivision subdivide_to_proper(const LevelGraph& g) {
  auto levels = level_map(g);
  Subdivision out;
  out.graph.levels = g.levels;
  out.graph.vertices = g.vertices;
  out.graph.original_levels = g.original_levels;
  std::set<std::string> ids;
  for (const auto& v : g.vertices) ids.insert(v.id);

  for (const auto& e : g.edges) {
    Edge oriented = levels.at(e.u) <= levels.at(e.v) ? e : Edge{e.v, e.u};
    int lo = levels.at(oriented.u);
    int hi = levels.at(oriented.v);
    if (hi - lo <= 1) {
      out.graph.edges.push_back(e);
      continue;
    }
    SubdividedEdge sub{oriented, {}};
    std::string prev = oriented.u;
    for (int l = lo + 1; l < hi; ++l) {
      std::string d = dummy_id(oriented.u, oriented.v, l);
      if (!ids.insert(d).second) throw Error("subdivide_to_proper: dummy id collides with vertex " + d);
      out.graph.vertices.push_back(Vertex{d, l});
      out.graph.edges.push_back(Edge{prev, d});
      out.map.dummy_ids.insert(d);
      sub.dummies.push_back(d);
      prev = d;
    }
    out.graph.edges.push_back(Edge{prev, oriented.v});
    out.map.edges.push_back(std::move(sub));
  }
  return out;
}

}  // namespace levelplan
