#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "levelplan/core.hpp"
#include "levelplan/oracles.hpp"

namespace fx {

using namespace levelplan;

inline TreeNode leaf(const std::string& id) { return TreeNode::make_leaf(id); }
inline TreeNode node(const std::string& id, std::vector<TreeNode> children) {
  return TreeNode::make_node(id, std::move(children));
}

inline TreeNode star(const std::string& id, const std::vector<std::string>& leaves) {
  if (leaves.size() == 1) return leaf(leaves[0]);
  std::vector<TreeNode> ch;
  for (const auto& l : leaves) ch.push_back(leaf(l));
  return node(id, ch);
}

/// Two levels a1..an / b1..bn with the given edges and star trees.
inline TLevelInstance two_level(int n, const std::vector<std::pair<int, int>>& edges) {
  TLevelInstance t;
  t.graph.levels = 2;
  std::vector<std::string> a, b;
  for (int i = 1; i <= n; ++i) {
    a.push_back("a" + std::to_string(i));
    b.push_back("b" + std::to_string(i));
    t.graph.vertices.push_back({a.back(), 0});
  }
  for (int i = 1; i <= n; ++i) t.graph.vertices.push_back({b[static_cast<std::size_t>(i - 1)], 1});
  for (auto [x, y] : edges) t.graph.edges.push_back({"a" + std::to_string(x), "b" + std::to_string(y)});
  t.trees = {{0, star("r0", a)}, {1, star("r1", b)}};
  return t;
}

inline TLevelInstance matching2() { return two_level(2, {{1, 1}, {2, 2}}); }
inline TLevelInstance k22() { return two_level(2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}); }

inline CLInstance root_only(const LevelGraph& g) {
  CLInstance c;
  c.graph = g;
  std::vector<TreeNode> ch;
  for (const auto& v : g.vertices) ch.push_back(leaf(v.id));
  c.hierarchy.root = node("root", ch);
  return c;
}

inline BetweennessInstance btw(int n, std::vector<std::array<std::string, 3>> triples) {
  BetweennessInstance b;
  for (int i = 1; i <= n; ++i) b.elements.push_back(std::to_string(i));
  b.triples = std::move(triples);
  return b;
}

inline BetweennessInstance cyclic() { return btw(3, {{"1", "2", "3"}, {"2", "3", "1"}, {"3", "1", "2"}}); }

/// Every permutation of items, in lexicographic order.
inline std::vector<std::vector<std::string>> permutations(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<std::string>> out;
  do out.push_back(items);
  while (std::next_permutation(items.begin(), items.end()));
  return out;
}

/// Every ordering of every level of g.
inline void for_each_ordering(const LevelGraph& g, const std::function<void(const LevelOrdering&)>& f) {
  auto members = level_members(g);
  std::vector<std::vector<std::vector<std::string>>> perms;
  for (const auto& row : members) perms.push_back(permutations(row));
  LevelOrdering o;
  o.levels.resize(members.size());
  std::function<void(std::size_t)> rec = [&](std::size_t l) {
    if (l == members.size()) {
      f(o);
      return;
    }
    for (const auto& p : perms[l]) {
      o.levels[l] = p;
      rec(l + 1);
    }
  };
  rec(0);
}

}  // namespace fx
