// Rotation systems for the SEFE instance built from a proper T-level
// instance, realising a given T-level planar ordering.
//
// Layout being encoded: the cycle bounds a disk with t_0..t_{k-1} going up the
// left side and q_{k-1}, p_{k-1}, ..., q_0, p_0 going down the right side.
// Level l occupies a horizontal strip; its tree copy grows rightwards from
// t_l and its leaves form a column listed top to bottom by sigma_l.  Adjacent
// columns face each other, so sigma alternates between the level order and
// its reverse.  Lists below are counterclockwise.

#include <algorithm>
#include <functional>
#include <limits>

#include "levelplan/drawing.hpp"
#include "levelplan/reductions.hpp"

namespace levelplan::drawing {

namespace {

constexpr long kFirst = std::numeric_limits<long>::min();
constexpr long kLast = std::numeric_limits<long>::max();

SefeWitness build(const TLevelInstance& t, const LevelOrdering& o) {
  auto red = reductions::reduce_tlp_to_sefe(t);
  const auto& s = red.instance;
  const auto& prov = red.provenance;
  const int k = t.graph.levels;

  // sigma rank of every level vertex.
  std::map<std::string, long> rank;
  for (int l = 0; l < k; ++l) {
    auto row = o.levels[static_cast<std::size_t>(l)];
    if (l % 2 == 0) std::reverse(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size(); ++i) rank[row[i]] = static_cast<long>(i);
  }

  auto role = [&](const std::string& id) -> const ProvenanceEntry& { return prov.entries.at(id); };
  auto level_of = [&](const std::string& id) { return std::stoi(role(id).source.at("level")); };

  // Largest sigma rank below each tree-copy vertex (children sort bottom-up).
  std::map<std::string, std::vector<std::string>> tree_children;
  std::map<std::string, long> deepest;
  {
    std::map<std::string, std::vector<std::string>> adj;
    auto pairing = oracles::common_pairing(s);
    for (std::size_t i = 0; i < s.e1.size(); ++i) {
      if (pairing[i] < 0) continue;
      adj[s.e1[i].u].push_back(s.e1[i].v);
      adj[s.e1[i].v].push_back(s.e1[i].u);
    }
    auto in_tree = [&](const std::string& id) {
      const auto& r = role(id).role;
      return r == "tree-node" || r == "tree-leaf";
    };
    std::function<long(const std::string&, const std::string&)> walk = [&](const std::string& x,
                                                                          const std::string& from) {
      auto vx = role(x).source.find("vertex");
      long best = vx != role(x).source.end() ? rank.at(vx->second) : -1;
      for (const auto& y : adj[x]) {
        if (y == from || !in_tree(y)) continue;
        tree_children[x].push_back(y);
        best = std::max(best, walk(y, x));
      }
      deepest[x] = best;
      return best;
    };
    for (int l = 0; l < k; ++l) walk("t:" + std::to_string(l), "");
  }

  auto star_vertex = [&](const std::string& id) { return role(id).source.at("vertex"); };

  // Sort key of the edge x-y at x; common tells cycle edges from parallel
  // private ones.
  auto key = [&](const std::string& x, const std::string& y, bool common) -> long {
    const auto& rx = role(x);
    const int l = level_of(x);
    if (rx.role == "cycle-t") {
      std::string pred = l == 0 ? "p:0" : "t:" + std::to_string(l - 1);
      std::string succ = l == k - 1 ? "q:" + std::to_string(k - 1) : "t:" + std::to_string(l + 1);
      if (common && y == pred) return kFirst;
      if (common && y == succ) return kLast;
      if (deepest.count(y) && role(y).role != "cycle-t") return -deepest.at(y);
      return 0;
    }
    if (rx.role == "tree-node") {
      auto kids = tree_children[x];
      if (std::find(kids.begin(), kids.end(), y) == kids.end()) return kFirst;
      return -deepest.at(y);
    }
    if (rx.role == "cycle-p" || rx.role == "cycle-q") {
      std::string north, south;
      if (rx.role == "cycle-p") {
        north = "q:" + std::to_string(l);
        south = l == 0 ? "t:0" : "q:" + std::to_string(l - 1);
      } else {
        north = l == k - 1 ? "t:" + std::to_string(k - 1) : "p:" + std::to_string(l + 1);
        south = "p:" + std::to_string(l);
      }
      if (common && y == north) return kFirst;
      if (common && y == south) return kLast;
      const auto& ry = role(y);
      if (ry.source.count("vertex")) return rank.at(ry.source.at("vertex"));
      throw Error("build_sefe_certificate: unexpected neighbour " + y + " of " + x);
    }
    if (rx.role == "star-p" || rx.role == "star-q") {
      const auto& ry = role(y);
      if (ry.role == "cycle-p" || ry.role == "cycle-q") return kFirst;
      if (ry.role == "star-p" || ry.role == "star-q") return -rank.at(star_vertex(y));
      return 0;
    }
    return 0;  // tree leaves have degree two in each graph
  };

  auto pairing = oracles::common_pairing(s);
  std::vector<bool> common2(s.e2.size(), false);
  for (int j : pairing) {
    if (j >= 0) common2[static_cast<std::size_t>(j)] = true;
  }

  auto rotations = [&](const std::vector<Edge>& edges, const std::string& prefix, auto is_common) {
    std::map<std::string, std::vector<std::pair<long, std::size_t>>> at;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      bool c = is_common(i);
      at[edges[i].u].push_back({key(edges[i].u, edges[i].v, c), i});
      at[edges[i].v].push_back({key(edges[i].v, edges[i].u, c), i});
    }
    RotationSystem r;
    for (const auto& v : s.vertices) {
      auto list = at[v];
      std::stable_sort(list.begin(), list.end());
      auto& ids = r.order[v];
      for (const auto& [kk, i] : list) ids.push_back(prefix + std::to_string(i));
    }
    return r;
  };

  SefeWitness w;
  w.first = rotations(s.e1, "1:", [&](std::size_t i) { return pairing[i] >= 0; });
  w.second = rotations(s.e2, "2:", [&](std::size_t i) { return common2[i]; });
  return w;
}

}  // namespace

// Built from the lexicographically smaller of o and its mirror, so that the
// mirrored ordering gets the reflected certificate.
SefeWitness build_sefe_certificate(const TLevelInstance& t, const LevelOrdering& o) {
  if (!is_proper(t.graph)) throw PreconditionError("build_sefe_certificate: instance is not proper");
  if (!oracles::is_tlevel_witness(t, o)) throw PreconditionError("build_sefe_certificate: ordering is not a witness");
  LevelOrdering mirror = o;
  for (auto& row : mirror.levels) std::reverse(row.begin(), row.end());
  if (!(mirror.levels < o.levels)) return build(t, o);
  SefeWitness w = build(t, mirror);
  for (auto* r : {&w.first, &w.second}) {
    for (auto& [v, ids] : r->order) std::reverse(ids.begin(), ids.end());
  }
  return w;
}

}  // namespace levelplan::drawing
