#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "levelplan/oracles.hpp"

namespace levelplan::oracles {

namespace {

EmbeddedGraph make_graph(const SefeInstance& s, const std::vector<Edge>& edges, const std::string& prefix) {
  EmbeddedGraph g;
  g.vertices = s.vertices;
  for (std::size_t i = 0; i < edges.size(); ++i)
    g.edges.push_back(LabeledEdge{prefix + std::to_string(i), edges[i].u, edges[i].v});
  return g;
}

// Rotates a cyclic sequence so that it starts at its smallest element.
void rotate_to_min(std::vector<int>& xs) {
  if (xs.empty()) return;
  std::rotate(xs.begin(), std::min_element(xs.begin(), xs.end()), xs.end());
}

std::uint64_t factorial_product(const std::vector<std::size_t>& degrees, std::uint64_t cap) {
  std::uint64_t product = 1;
  for (auto d : degrees) {
    for (std::size_t f = 2; f + 1 <= d; ++f) {
      if (product > cap / f) return cap + 1;
      product *= f;
    }
  }
  return product;
}

// Enumerates every rotation system of one graph (first edge of each vertex
// fixed) and reports the planar ones.
class RotationEnumerator {
 public:
  RotationEnumerator(const SefeInstance& s, const std::vector<Edge>& edges, const std::vector<int>& common_id)
      : n_(s.vertices.size()), m_(edges.size()), common_id_(common_id) {
    std::map<std::string, std::size_t> vindex;
    for (std::size_t i = 0; i < n_; ++i) vindex[s.vertices[i]] = i;
    rot_.resize(n_);
    for (std::size_t e = 0; e < m_; ++e) {
      rot_[vindex.at(edges[e].u)].push_back(2 * e);
      rot_[vindex.at(edges[e].v)].push_back(2 * e + 1);
    }
    succ_.assign(2 * m_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      apply(v);
      if (rot_[v].size() >= 3) variable_.push_back(v);
    }
    seen_.assign(2 * m_, 0);
  }

  std::uint64_t product(std::uint64_t cap) const {
    std::vector<std::size_t> degrees;
    for (const auto& r : rot_) degrees.push_back(r.size());
    return factorial_product(degrees, cap);
  }

  // Calls visit() for every planar rotation system until it returns true.
  bool each_planar(const std::function<bool()>& visit) {
    while (true) {
      if (planar() && visit()) return true;
      if (!advance()) return false;
    }
  }

  // Common-edge rotation key; reversed when mirror is set.
  std::vector<int> key(bool mirror) const {
    std::vector<int> out;
    std::vector<int> cyc;
    for (std::size_t v = 0; v < n_; ++v) {
      cyc.clear();
      for (auto d : rot_[v]) {
        int c = common_id_[d / 2];
        if (c >= 0) cyc.push_back(c);
      }
      if (mirror) std::reverse(cyc.begin(), cyc.end());
      rotate_to_min(cyc);
      out.insert(out.end(), cyc.begin(), cyc.end());
      out.push_back(-1);
    }
    return out;
  }

  RotationSystem snapshot(const SefeInstance& s, const std::string& prefix, bool mirror) const {
    RotationSystem r;
    for (std::size_t v = 0; v < n_; ++v) {
      std::vector<std::string> ids;
      for (auto d : rot_[v]) ids.push_back(prefix + std::to_string(d / 2));
      if (mirror) std::reverse(ids.begin(), ids.end());
      r.order[s.vertices[v]] = std::move(ids);
    }
    return r;
  }

 private:
  void apply(std::size_t v) {
    const auto& r = rot_[v];
    for (std::size_t k = 0; k < r.size(); ++k) succ_[r[k]] = r[(k + 1) % r.size()];
  }

  // Odometer over the variable vertices; each digit is a permutation of all
  // but the first edge end.
  bool advance() {
    for (auto v : variable_) {
      auto& r = rot_[v];
      bool more = std::next_permutation(r.begin() + 1, r.end());
      apply(v);
      if (more) return true;
    }
    return false;
  }

  bool planar() {
    if (m_ == 0) return n_ == 1;
    ++stamp_;
    long faces = 0;
    for (std::size_t start = 0; start < 2 * m_; ++start) {
      if (seen_[start] == stamp_) continue;
      ++faces;
      std::size_t d = start;
      while (seen_[d] != stamp_) {
        seen_[d] = stamp_;
        d = succ_[d ^ 1];
      }
    }
    return static_cast<long>(n_) - static_cast<long>(m_) + faces == 2;
  }

  std::size_t n_, m_;
  std::vector<int> common_id_;
  std::vector<std::vector<std::size_t>> rot_;
  std::vector<std::size_t> succ_;
  std::vector<std::size_t> variable_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : k) h = (h ^ static_cast<std::size_t>(x + 2)) * 1099511628211ull;
    return h;
  }
};

bool connected(const std::vector<std::string>& vertices, const std::vector<Edge>& edges) {
  if (vertices.empty()) return true;
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::set<std::string> seen{vertices.front()};
  std::vector<std::string> stack{vertices.front()};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto& y : adj[x]) {
      if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return seen.size() == vertices.size();
}

}  // namespace

EmbeddedGraph first_graph(const SefeInstance& s) { return make_graph(s, s.e1, "1:"); }
EmbeddedGraph second_graph(const SefeInstance& s) { return make_graph(s, s.e2, "2:"); }

std::vector<int> common_pairing(const SefeInstance& s) {
  std::vector<int> out(s.e1.size(), -1);
  std::vector<bool> taken(s.e2.size(), false);
  for (std::size_t i = 0; i < s.e1.size(); ++i) {
    for (std::size_t j = 0; j < s.e2.size(); ++j) {
      if (!taken[j] && canonical(s.e1[i]) == canonical(s.e2[j])) {
        taken[j] = true;
        out[i] = static_cast<int>(j);
        break;
      }
    }
  }
  return out;
}

RotationSystem common_rotation(const SefeInstance& s, const RotationSystem& r, bool first) {
  auto pairing = common_pairing(s);
  std::map<std::string, int> name;  // edge id in r -> e1 index
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    if (pairing[i] < 0) continue;
    name[first ? "1:" + std::to_string(i) : "2:" + std::to_string(pairing[i])] = static_cast<int>(i);
  }
  RotationSystem out;
  for (const auto& [v, ids] : r.order) {
    std::vector<int> cyc;
    for (const auto& id : ids) {
      auto it = name.find(id);
      if (it != name.end()) cyc.push_back(it->second);
    }
    rotate_to_min(cyc);
    auto& dst = out.order[v];
    for (int c : cyc) dst.push_back("c:" + std::to_string(c));
  }
  return out;
}

bool is_sefe_witness(const SefeInstance& s, const SefeWitness& w) {
  try {
    if (!trace_faces(first_graph(s), w.first).planar()) return false;
    if (!trace_faces(second_graph(s), w.second).planar()) return false;
  } catch (const PreconditionError&) {
    return false;
  }
  return common_rotation(s, w.first, true) == common_rotation(s, w.second, false);
}

SefeResult solve_sefe_exhaustive(const SefeInstance& s, const Budgets& budgets) {
  if (!validate_instance(s).empty()) throw PreconditionError("solve_sefe_exhaustive: invalid instance");
  if (!connected(s.vertices, common_edges(s)))
    throw PreconditionError("solve_sefe_exhaustive: common graph is disconnected (outside oracle scope)");

  auto pairing = common_pairing(s);
  std::vector<int> id1(s.e1.size(), -1), id2(s.e2.size(), -1);
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    if (pairing[i] < 0) continue;
    id1[i] = static_cast<int>(i);
    id2[static_cast<std::size_t>(pairing[i])] = static_cast<int>(i);
  }
  RotationEnumerator g1(s, s.e1, id1), g2(s, s.e2, id2);
  const auto cap = budgets.max_rotation_product;
  if (g1.product(cap) > cap || g2.product(cap) > cap)
    throw BudgetExceeded("solve_sefe_exhaustive: rotation product exceeds " + std::to_string(cap));

  // Planar G1 embeddings by induced common rotation; mirrors are included so
  // that G2 matches up to global reflection.
  std::unordered_map<std::vector<int>, std::pair<RotationSystem, bool>, KeyHash> first;
  std::vector<std::pair<std::vector<int>, bool>> pending;
  g1.each_planar([&] {
    for (bool mirror : {false, true}) {
      auto k = g1.key(mirror);
      if (!first.count(k)) first.emplace(std::move(k), std::make_pair(g1.snapshot(s, "1:", mirror), mirror));
    }
    return false;
  });

  SefeResult result;
  g2.each_planar([&] {
    auto it = first.find(g2.key(false));
    if (it == first.end()) return false;
    result.embeddable = true;
    result.witness = SefeWitness{it->second.first, g2.snapshot(s, "2:", false)};
    return true;
  });
  if (result.witness && !is_sefe_witness(s, *result.witness))
    throw Error("solve_sefe_exhaustive: witness failed re-check");
  return result;
}

LevelOrdering decode_sefe_to_orderings(const SefeInstance& s, const ReductionProvenance& provenance,
                                       const SefeWitness& witness) {
  if (!trace_faces(first_graph(s), witness.first).planar() || !trace_faces(second_graph(s), witness.second).planar())
    throw PreconditionError("decode_sefe_to_orderings: witness is not planar");

  // Tree-copy membership and cycle roots per level.
  std::map<int, std::string> roots;
  std::map<std::string, int> tree_level;
  std::map<std::string, std::string> leaf_vertex;
  for (const auto& [id, entry] : provenance.entries) {
    auto lv = entry.source.find("level");
    if (entry.role == "cycle-t" || entry.role == "tree-node" || entry.role == "tree-leaf") {
      if (lv == entry.source.end()) throw PreconditionError("decode_sefe_to_orderings: role without level: " + id);
      int level = std::stoi(lv->second);
      tree_level[id] = level;
      if (entry.role == "cycle-t") roots[level] = id;
      auto vx = entry.source.find("vertex");
      if (vx != entry.source.end()) leaf_vertex[id] = vx->second;
    }
  }
  if (roots.empty()) throw PreconditionError("decode_sefe_to_orderings: provenance metadata missing");
  const int k = static_cast<int>(roots.size());
  for (int l = 0; l < k; ++l) {
    if (!roots.count(l)) throw PreconditionError("decode_sefe_to_orderings: no cycle root for level " + std::to_string(l));
  }

  auto g = first_graph(s);
  auto pairing = common_pairing(s);
  std::map<std::string, std::pair<std::string, std::string>> ends;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (pairing[i] >= 0) ends[g.edges[i].id] = {g.edges[i].u, g.edges[i].v};
  }
  auto other = [&](const std::string& edge, const std::string& at) {
    const auto& [u, v] = ends.at(edge);
    return u == at ? v : u;
  };
  auto common_nbrs = [&](const std::string& x) {
    std::vector<std::pair<std::string, std::string>> out;  // (edge, neighbour)
    auto it = witness.first.order.find(x);
    if (it == witness.first.order.end()) return out;
    for (const auto& e : it->second) {
      if (ends.count(e)) out.push_back({e, other(e, x)});
    }
    return out;
  };

  LevelOrdering o;
  for (int l = 0; l < k; ++l) {
    const std::string& root = roots.at(l);
    std::string pred = l == 0 ? "p:0" : "t:" + std::to_string(l - 1);
    auto pred_entry = std::find_if(provenance.entries.begin(), provenance.entries.end(), [&](const auto& kv) {
      if (l == 0) return kv.second.role == "cycle-p" && kv.second.source.at("level") == "0";
      return kv.second.role == "cycle-t" && kv.second.source.at("level") == std::to_string(l - 1);
    });
    if (pred_entry == provenance.entries.end()) throw PreconditionError("decode_sefe_to_orderings: cycle metadata missing");
    pred = pred_entry->first;

    std::vector<std::string> theta;
    std::function<void(const std::string&, const std::string&)> visit = [&](const std::string& x,
                                                                            const std::string& from) {
      auto lv = leaf_vertex.find(x);
      if (lv != leaf_vertex.end()) {
        theta.push_back(lv->second);
        return;
      }
      auto nbrs = common_nbrs(x);
      // Start right after the edge towards the parent (or the cycle predecessor).
      std::size_t start = 0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (nbrs[i].second == from) {
          start = i + 1;
          break;
        }
      }
      for (std::size_t step = 0; step < nbrs.size(); ++step) {
        const auto& [e, y] = nbrs[(start + step) % nbrs.size()];
        auto tl = tree_level.find(y);
        if (y == from || tl == tree_level.end() || tl->second != l || y == root) continue;
        visit(y, x);
      }
    };
    visit(root, pred);
    if (l % 2 == 1) std::reverse(theta.begin(), theta.end());
    o.levels.push_back(std::move(theta));
  }
  return o;
}

}  // namespace levelplan::oracles
