// Level-by-level backtracking over positions.  Vertices of a level are tried
// in id order at each slot, so the first witness found is the
// lexicographically smallest sequence of per-level permutations.

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "levelplan/oracles.hpp"

namespace levelplan::oracles {

namespace {

constexpr int kMaxWidth = 64;

struct LevelData {
  std::vector<int> verts;              // global indices, sorted by id
  std::vector<std::uint64_t> sets;     // leaf sets of internal nodes, as local masks
  std::vector<bool> real;
};

class TlpSearch {
 public:
  TlpSearch(const TLevelInstance& t, const Budgets& budgets) : cap_(budgets.max_perm_product) {
    proper_ = is_proper(t.graph);
    if (proper_) {
      graph_ = t.graph;
    } else {
      auto sub = subdivide_to_proper(t.graph);
      graph_ = std::move(sub.graph);
      dummies_ = std::move(sub.map.dummy_ids);
    }
    build(t);
  }

  std::optional<LevelOrdering> run() {
    if (!place(0, 0)) return std::nullopt;
    LevelOrdering o;
    for (const auto& ld : levels_) {
      std::vector<std::string> row(ld.verts.size());
      for (int g : ld.verts) row[static_cast<std::size_t>(pos_[g])] = ids_[g];
      o.levels.push_back(std::move(row));
    }
    return o;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void build(const TLevelInstance& t) {
    auto members = level_members(graph_);
    std::map<std::string, int> global;
    for (auto& row : members) std::sort(row.begin(), row.end());
    levels_.resize(members.size());
    for (std::size_t l = 0; l < members.size(); ++l) {
      if (members[l].size() > kMaxWidth)
        throw BudgetExceeded("solve_tlp_exhaustive: level " + std::to_string(l) + " wider than 64");
      for (const auto& id : members[l]) {
        int g = static_cast<int>(ids_.size());
        global[id] = g;
        ids_.push_back(id);
        level_of_.push_back(static_cast<int>(l));
        local_.push_back(static_cast<int>(levels_[l].verts.size()));
        levels_[l].verts.push_back(g);
        levels_[l].real.push_back(!dummies_.count(id));
      }
    }
    down_.resize(ids_.size());
    for (const auto& e : graph_.edges) {
      int a = global.at(e.u), b = global.at(e.v);
      if (level_of_[a] > level_of_[b]) std::swap(a, b);
      down_[b].push_back(a);
    }
    pos_.assign(ids_.size(), -1);

    for (const auto& tree : t.trees) {
      if (tree.level < 0 || tree.level >= graph_.levels) throw PreconditionError("solve_tlp_exhaustive: bad tree level");
      auto& ld = levels_[static_cast<std::size_t>(tree.level)];
      std::uint64_t full = 0;
      for (std::size_t j = 0; j < ld.verts.size(); ++j) {
        if (ld.real[j]) full |= std::uint64_t{1} << j;
      }
      std::function<std::uint64_t(const TreeNode&)> walk = [&](const TreeNode& n) -> std::uint64_t {
        if (n.leaf) {
          auto it = global.find(n.id);
          if (it == global.end() || level_of_[it->second] != tree.level)
            throw PreconditionError("solve_tlp_exhaustive: tree leaf " + n.id + " not on its level");
          return std::uint64_t{1} << local_[it->second];
        }
        std::uint64_t mask = 0;
        for (const auto& c : n.children) mask |= walk(c);
        if (std::popcount(mask) > 1 && mask != full) ld.sets.push_back(mask);
        return mask;
      };
      walk(tree.root);
    }
  }

  // Tries every unused vertex of level l at slot p.
  bool place(std::size_t l, int p) {
    if (l == levels_.size()) return true;
    auto& ld = levels_[l];
    if (p == static_cast<int>(ld.verts.size())) {
      int saved_max = max_down_;
      std::uint64_t saved_used = used_, saved_placed = placed_real_;
      int saved_last = last_real_;
      max_down_ = -1;
      used_ = 0;
      placed_real_ = 0;
      last_real_ = -1;
      if (place(l + 1, 0)) return true;
      max_down_ = saved_max;
      used_ = saved_used;
      placed_real_ = saved_placed;
      last_real_ = saved_last;
      return false;
    }
    for (std::size_t j = 0; j < ld.verts.size(); ++j) {
      std::uint64_t bit = std::uint64_t{1} << j;
      if (used_ & bit) continue;
      if (++nodes_ > cap_)
        throw BudgetExceeded("solve_tlp_exhaustive: more than " + std::to_string(cap_) + " search nodes");
      int x = ld.verts[j];

      int lo = -1, hi = -1;
      for (int d : down_[x]) {
        if (lo < 0 || pos_[d] < lo) lo = pos_[d];
        if (pos_[d] > hi) hi = pos_[d];
      }
      if (lo >= 0 && lo < max_down_) continue;

      if (ld.real[j] && !tree_allows(ld, j)) continue;

      int saved_max = max_down_;
      std::uint64_t saved_placed = placed_real_;
      int saved_last = last_real_;
      pos_[x] = p;
      used_ |= bit;
      max_down_ = std::max(max_down_, hi);
      if (ld.real[j]) {
        placed_real_ |= bit;
        last_real_ = static_cast<int>(j);
      }
      if (place(l, p + 1)) return true;
      pos_[x] = -1;
      used_ &= ~bit;
      max_down_ = saved_max;
      placed_real_ = saved_placed;
      last_real_ = saved_last;
    }
    return false;
  }

  // A set already entered must continue from its last real element; a set
  // already left, or entered and not finished, must not be interrupted.
  bool tree_allows(const LevelData& ld, std::size_t j) const {
    std::uint64_t bit = std::uint64_t{1} << j;
    for (std::uint64_t s : ld.sets) {
      std::uint64_t seen = placed_real_ & s;
      if (s & bit) {
        if (seen && !(last_real_ >= 0 && (s >> last_real_) & 1)) return false;
      } else {
        if (seen && seen != s) return false;
      }
    }
    return true;
  }

  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  bool proper_ = true;
  LevelGraph graph_;
  std::set<std::string> dummies_;
  std::vector<LevelData> levels_;
  std::vector<std::string> ids_;
  std::vector<int> level_of_, local_, pos_;
  std::vector<std::vector<int>> down_;
  int max_down_ = -1;
  std::uint64_t used_ = 0;
  std::uint64_t placed_real_ = 0;
  int last_real_ = -1;
};

}  // namespace

std::optional<LevelOrdering> solve_tlp_exhaustive(const TLevelInstance& t, const Budgets& budgets, SearchStats* stats) {
  if (!validate_instance(t).empty()) throw PreconditionError("solve_tlp_exhaustive: invalid instance");
  TlpSearch search(t, budgets);
  auto found = search.run();
  if (stats) stats->nodes = search.nodes();
  if (found && !is_tlevel_witness(t, *found)) throw Error("solve_tlp_exhaustive: witness failed re-check");
  return found;
}

}  // namespace levelplan::oracles
