// Cluster-consecutive ordering search.  Written independently of the T-level
// search: per level it enumerates all permutations up front, filters them by
// cluster consecutiveness, and then chains levels with a pairwise edge
// crossing test.

#include <algorithm>
#include <numeric>
#include <set>

#include "levelplan/oracles.hpp"

namespace levelplan::oracles {

namespace {

struct Candidate {
  std::vector<int> order;  // local indices left to right
  std::vector<int> pos;    // local index -> position
};

class ClusterSearch {
 public:
  ClusterSearch(const LevelGraph& g, const std::set<std::string>& dummies,
                const std::vector<ClusterInfo>& clusters, std::uint64_t cap)
      : cap_(cap) {
    members_ = level_members(g);
    for (auto& row : members_) std::sort(row.begin(), row.end());
    std::map<std::string, std::pair<int, int>> where;
    for (std::size_t l = 0; l < members_.size(); ++l) {
      for (std::size_t j = 0; j < members_[l].size(); ++j)
        where[members_[l][j]] = {static_cast<int>(l), static_cast<int>(j)};
    }
    gap_edges_.resize(members_.size());
    for (const auto& e : g.edges) {
      auto a = where.at(e.u), b = where.at(e.v);
      if (a.first > b.first) std::swap(a, b);
      gap_edges_[static_cast<std::size_t>(a.first)].push_back({a.second, b.second});
    }
    candidates_.resize(members_.size());
    for (std::size_t l = 0; l < members_.size(); ++l) {
      std::vector<std::vector<bool>> in_cluster;
      for (const auto& c : clusters) {
        std::vector<bool> mask(members_[l].size(), false);
        bool any = false;
        for (std::size_t j = 0; j < members_[l].size(); ++j) {
          if (c.members.count(members_[l][j])) {
            mask[j] = true;
            any = true;
          }
        }
        if (any) in_cluster.push_back(std::move(mask));
      }
      std::vector<bool> real(members_[l].size());
      for (std::size_t j = 0; j < real.size(); ++j) real[j] = !dummies.count(members_[l][j]);
      enumerate(l, in_cluster, real);
    }
  }

  std::optional<LevelOrdering> run() {
    chosen_.assign(members_.size(), -1);
    if (!members_.empty() && !chain(0)) return std::nullopt;
    LevelOrdering o;
    for (std::size_t l = 0; l < members_.size(); ++l) {
      std::vector<std::string> row;
      for (int j : candidates_[l][static_cast<std::size_t>(chosen_[l])].order)
        row.push_back(members_[l][static_cast<std::size_t>(j)]);
      o.levels.push_back(std::move(row));
    }
    return o;
  }

 private:
  void tick() {
    if (++work_ > cap_) throw BudgetExceeded("cluster search: more than " + std::to_string(cap_) + " steps");
  }

  void enumerate(std::size_t l, const std::vector<std::vector<bool>>& clusters, const std::vector<bool>& real) {
    std::vector<int> perm(members_[l].size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      tick();
      bool ok = true;
      for (const auto& mask : clusters) {
        int first = -1, last = -1, count = 0, rank = 0;
        for (int j : perm) {
          if (!real[static_cast<std::size_t>(j)]) continue;
          if (mask[static_cast<std::size_t>(j)]) {
            if (first < 0) first = rank;
            last = rank;
            ++count;
          }
          ++rank;
        }
        if (count > 0 && last - first + 1 != count) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Candidate c{perm, std::vector<int>(perm.size())};
      for (std::size_t p = 0; p < perm.size(); ++p) c.pos[static_cast<std::size_t>(perm[p])] = static_cast<int>(p);
      candidates_[l].push_back(std::move(c));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  bool compatible(std::size_t l, const Candidate& below, const Candidate& above) const {
    const auto& edges = gap_edges_[l];
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (a == c || b == d) continue;
        bool lower = below.pos[static_cast<std::size_t>(a)] < below.pos[static_cast<std::size_t>(c)];
        bool upper = above.pos[static_cast<std::size_t>(b)] < above.pos[static_cast<std::size_t>(d)];
        if (lower != upper) return false;
      }
    }
    return true;
  }

  bool chain(std::size_t l) {
    if (l == members_.size()) return true;
    for (std::size_t i = 0; i < candidates_[l].size(); ++i) {
      tick();
      if (l > 0 && !compatible(l - 1, candidates_[l - 1][static_cast<std::size_t>(chosen_[l - 1])], candidates_[l][i]))
        continue;
      chosen_[l] = static_cast<int>(i);
      if (chain(l + 1)) return true;
    }
    return false;
  }

  std::uint64_t cap_;
  std::uint64_t work_ = 0;
  std::vector<std::vector<std::string>> members_;
  std::vector<std::vector<std::pair<int, int>>> gap_edges_;
  std::vector<std::vector<Candidate>> candidates_;
  std::vector<int> chosen_;
};

std::optional<LevelOrdering> search(const CLInstance& c, const Budgets& budgets) {
  auto clusters = cluster_infos(c.hierarchy, c.graph);
  if (is_proper(c.graph)) return ClusterSearch(c.graph, {}, clusters, budgets.max_perm_product).run();
  auto sub = subdivide_to_proper(c.graph);
  return ClusterSearch(sub.graph, sub.map.dummy_ids, clusters, budgets.max_perm_product).run();
}

void recheck(const CLInstance& c, const std::optional<LevelOrdering>& o, const char* who) {
  if (!o) return;
  LevelGraph g = is_proper(c.graph) ? c.graph : subdivide_to_proper(c.graph).graph;
  if (!ordering_matches_graph(g, *o) || !ordering_is_crossing_free(g, *o) || !clusters_consecutive(c, *o))
    throw Error(std::string(who) + ": witness failed re-check");
}

}  // namespace

std::optional<LevelOrdering> solve_cl_levelconnected(const CLInstance& c, const Budgets& budgets) {
  if (!validate_instance(c).empty()) throw PreconditionError("solve_cl_levelconnected: invalid instance");
  if (!is_proper(c.graph))
    throw PreconditionError("solve_cl_levelconnected: instance is not proper; use check_cl_necessary");
  if (!is_level_connected(c).connected)
    throw PreconditionError("solve_cl_levelconnected: instance is not level-connected; use check_cl_necessary");
  auto found = search(c, budgets);
  recheck(c, found, "solve_cl_levelconnected");
  return found;
}

std::optional<LevelOrdering> check_cl_necessary(const CLInstance& c, const Budgets& budgets) {
  if (!validate_instance(c).empty()) throw PreconditionError("check_cl_necessary: invalid instance");
  auto found = search(c, budgets);
  recheck(c, found, "check_cl_necessary");
  return found;
}

}  // namespace levelplan::oracles
