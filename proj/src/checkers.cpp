#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "levelplan/oracles.hpp"

namespace levelplan {

Budgets Budgets::defaults() {
  Budgets b;
  const char* env = std::getenv("LEVELPLAN_BUDGET");
  if (env == nullptr) return b;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("LEVELPLAN_BUDGET: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::uint64_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("LEVELPLAN_BUDGET: bad number in '" + item + "'");
    }
    if (key == "perm") {
      b.max_perm_product = value;
    } else if (key == "rotation") {
      b.max_rotation_product = value;
    } else if (key == "betweenness") {
      b.max_betweenness_elements = static_cast<std::size_t>(value);
    } else {
      throw Error("LEVELPLAN_BUDGET: unknown key '" + key + "'");
    }
  }
  return b;
}

ValidationReport validate_instance(const BetweennessInstance& b) {
  ValidationReport r;
  std::set<std::string> ids;
  for (const auto& a : b.elements) {
    if (a.empty()) r.push_back({"empty-id", "element with empty id"});
    if (!ids.insert(a).second) r.push_back({"duplicate-element", a});
  }
  for (std::size_t i = 0; i < b.triples.size(); ++i) {
    const auto& t = b.triples[i];
    std::string where = "triple " + std::to_string(i);
    for (const auto& x : t) {
      if (!ids.count(x)) r.push_back({"unknown-element", where + ": " + x});
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) r.push_back({"repeated-element", where});
  }
  return r;
}

namespace oracles {

namespace {

bool between(std::size_t a, std::size_t b, std::size_t d) { return (a < b && b < d) || (d < b && b < a); }

}  // namespace

bool satisfies_betweenness(const BetweennessInstance& b, const std::vector<std::string>& order) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  if (pos.size() != order.size() || order.size() != b.elements.size()) return false;
  for (const auto& a : b.elements) {
    if (!pos.count(a)) return false;
  }
  return std::all_of(b.triples.begin(), b.triples.end(), [&](const auto& t) {
    return between(pos.at(t[0]), pos.at(t[1]), pos.at(t[2]));
  });
}

std::optional<std::vector<std::string>> solve_betweenness(const BetweennessInstance& b, const Budgets& budgets) {
  if (!validate_instance(b).empty()) throw PreconditionError("solve_betweenness: invalid instance");
  const std::size_t n = b.elements.size();
  if (n > budgets.max_betweenness_elements)
    throw BudgetExceeded("solve_betweenness: instance too large for oracle (n=" + std::to_string(n) + ")");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[b.elements[i]] = i;
  std::vector<std::array<std::size_t, 3>> triples;
  for (const auto& t : b.triples) triples.push_back({index[t[0]], index[t[1]], index[t[2]]});

  // perm[s] = element at position s; pos is its inverse.
  std::vector<std::size_t> perm(n), pos(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::size_t s = 0; s < n; ++s) pos[perm[s]] = s;
    bool ok = std::all_of(triples.begin(), triples.end(),
                          [&](const auto& t) { return between(pos[t[0]], pos[t[1]], pos[t[2]]); });
    if (ok) {
      std::vector<std::string> out;
      for (auto i : perm) out.push_back(b.elements[i]);
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

bool ordering_matches_graph(const LevelGraph& g, const LevelOrdering& o) {
  if (static_cast<int>(o.levels.size()) != g.levels) return false;
  auto members = level_members(g);
  for (std::size_t l = 0; l < members.size(); ++l) {
    auto a = members[l];
    auto b = o.levels[l];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

bool ordering_is_crossing_free(const LevelGraph& g, const LevelOrdering& o) {
  std::map<std::string, std::size_t> pos;
  for (const auto& level : o.levels) {
    for (std::size_t i = 0; i < level.size(); ++i) pos[level[i]] = i;
  }
  auto levels = level_map(g);
  // Orient every edge bottom to top and compare pairs on the same level gap.
  struct Oriented {
    int level;
    std::string lo, hi;
  };
  std::vector<Oriented> edges;
  for (const auto& e : g.edges) {
    int lu = levels.at(e.u), lv = levels.at(e.v);
    if (lu < lv) {
      edges.push_back({lu, e.u, e.v});
    } else {
      edges.push_back({lv, e.v, e.u});
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& a = edges[i];
      const auto& b = edges[j];
      if (a.level != b.level) continue;
      if (a.lo == b.lo || a.hi == b.hi) continue;
      bool below = pos.at(a.lo) < pos.at(b.lo);
      bool above = pos.at(a.hi) < pos.at(b.hi);
      if (below != above) return false;
    }
  }
  return true;
}

bool ordering_is_tree_compatible(const TreeNode& tree, const std::vector<std::string>& order, CompatMode mode) {
  auto leaves = tree.leaves();
  std::set<std::string> leaf_set(leaves.begin(), leaves.end());
  std::vector<std::string> seq;
  for (const auto& x : order) {
    if (mode == CompatMode::AllVertices || leaf_set.count(x)) seq.push_back(x);
  }
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = i;
  for (const auto& l : leaves) {
    if (!pos.count(l)) return false;
  }

  bool ok = true;
  std::function<std::vector<std::size_t>(const TreeNode&)> walk = [&](const TreeNode& n) {
    if (n.leaf) return std::vector<std::size_t>{pos.at(n.id)};
    std::vector<std::size_t> all;
    for (const auto& c : n.children) {
      auto sub = walk(c);
      all.insert(all.end(), sub.begin(), sub.end());
    }
    auto [lo, hi] = std::minmax_element(all.begin(), all.end());
    if (*hi - *lo + 1 != all.size()) ok = false;
    return all;
  };
  walk(tree);
  return ok;
}

bool is_tlevel_witness(const TLevelInstance& t, const LevelOrdering& o) {
  bool proper = is_proper(t.graph);
  LevelGraph g = proper ? t.graph : subdivide_to_proper(t.graph).graph;
  if (!ordering_matches_graph(g, o)) return false;
  if (!ordering_is_crossing_free(g, o)) return false;
  for (const auto& tree : t.trees) {
    if (tree.level < 0 || tree.level >= static_cast<int>(o.levels.size())) return false;
    auto mode = proper ? CompatMode::AllVertices : CompatMode::RealSubsequence;
    if (!ordering_is_tree_compatible(tree.root, o.levels[static_cast<std::size_t>(tree.level)], mode)) return false;
  }
  return true;
}

bool clusters_consecutive(const CLInstance& c, const LevelOrdering& o) {
  std::set<std::string> real;
  for (const auto& v : c.graph.vertices) real.insert(v.id);
  for (const auto& info : cluster_infos(c.hierarchy, c.graph)) {
    for (const auto& level : o.levels) {
      long first = -1, last = -1, count = 0, rank = 0;
      for (const auto& x : level) {
        if (!real.count(x)) continue;
        if (info.members.count(x)) {
          if (first < 0) first = rank;
          last = rank;
          ++count;
        }
        ++rank;
      }
      if (count > 0 && last - first + 1 != count) return false;
    }
  }
  return true;
}

}  // namespace oracles
}  // namespace levelplan
