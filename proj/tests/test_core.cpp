#include "doctest.h"
#include "fixtures.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;
using fx::leaf;
using fx::node;

namespace {

bool has_code(const ValidationReport& r, const std::string& code) {
  return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.code == code; });
}

std::vector<std::vector<std::string>> compatible_orders(const TreeNode& t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : fx::permutations(t.leaves())) {
    if (oracles::ordering_is_tree_compatible(t, p)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("validate accepts a single vertex") {
    LevelGraph g{1, {{"a", 0}}, {}, {}};
    CHECK(validate_instance(g).empty());
  }

  TEST_CASE("validate reports an intra-level edge") {
    LevelGraph g{1, {{"a", 0}, {"b", 0}}, {{"a", "b"}}, {}};
    CHECK(has_code(validate_instance(g), "intra-level-edge"));
  }

  TEST_CASE("validate reports a tree missing a level vertex") {
    auto t = fx::matching2();
    t.trees[0].root = leaf("a1");
    CHECK(has_code(validate_instance(t), "tree-leaf-missing"));
  }

  TEST_CASE("validate reports malformed ids and duplicates without throwing") {
    LevelGraph g{2, {{"", 0}, {"a", 1}, {"a", 1}}, {{"a", "zz"}}, {}};
    auto r = validate_instance(g);
    CHECK(has_code(r, "empty-id"));
    CHECK(has_code(r, "duplicate-vertex"));
    CHECK(has_code(r, "unknown-vertex"));
  }

  TEST_CASE("duplicate edges are rejected in level graphs but allowed in SEFE instances") {
    LevelGraph g{2, {{"a", 0}, {"b", 1}}, {{"a", "b"}, {"b", "a"}}, {}};
    CHECK(has_code(validate_instance(g), "duplicate-edge"));
    SefeInstance s{{"a", "b"}, {{"a", "b"}, {"a", "b"}}, {{"a", "b"}}};
    CHECK(validate_instance(s).empty());
    CHECK(common_edges(s).size() == 1);
  }

  TEST_CASE("is_proper") {
    LevelGraph path{3, {{"x", 0}, {"y", 1}, {"z", 2}}, {{"x", "y"}, {"y", "z"}}, {}};
    CHECK(is_proper(path));
    LevelGraph jump{3, {{"x", 0}, {"y", 1}, {"z", 2}}, {{"x", "z"}}, {}};
    CHECK_FALSE(is_proper(jump));
    LevelGraph none{2, {{"x", 0}, {"y", 1}}, {}, {}};
    CHECK(is_proper(none));
  }

  TEST_CASE("root-only hierarchy over a connected two-level graph is level-connected") {
    auto c = fx::root_only(fx::matching2().graph);
    c.graph.edges.push_back({"a1", "b2"});
    CHECK(is_level_connected(c).connected);
  }

  TEST_CASE("cluster without internal edges reports every gap") {
    CLInstance c;
    c.graph = LevelGraph{3, {{"a", 0}, {"m", 1}, {"b", 2}}, {{"a", "m"}, {"m", "b"}}, {}};
    c.hierarchy.root = node("root", {node("mu", {leaf("a"), leaf("b")}), leaf("m")});
    auto r = is_level_connected(c);
    CHECK_FALSE(r.connected);
    REQUIRE(r.gaps.size() == 2);
    CHECK(r.gaps[0] == LevelGap{"mu", 0});
    CHECK(r.gaps[1] == LevelGap{"mu", 1});
  }

  TEST_CASE("is_level_connected rejects non-proper input") {
    CLInstance c;
    c.graph = LevelGraph{3, {{"a", 0}, {"m", 1}, {"b", 2}}, {{"a", "b"}}, {}};
    c.hierarchy.root = node("root", {leaf("a"), leaf("m"), leaf("b")});
    CHECK_THROWS_AS(is_level_connected(c), PreconditionError);
  }

  TEST_CASE("normalize contracts a unary chain to its leaf") {
    auto t = normalize_tree(node("root", {node("x", {leaf("a")})}));
    CHECK(t.leaf);
    CHECK(t.id == "a");
  }

  TEST_CASE("normalize is the identity on binary trees") {
    auto t = node("r", {node("x", {leaf("a"), leaf("b")}), leaf("c")});
    CHECK(normalize_tree(t) == t);
  }

  TEST_CASE("normalize keeps the compatible permutations") {
    // 5 nodes before (r, x, y, and leaves counted separately); one unary node.
    auto before = node("r", {node("x", {node("y", {leaf("a"), leaf("b")})}), leaf("c")});
    auto after = normalize_tree(before);
    CHECK(after.node_count() + 1 == before.node_count());
    CHECK(compatible_orders(before) == compatible_orders(after));
    // Oracle count: {a,b} adjacent among 3 leaves.
    CHECK(compatible_orders(after).size() == 4);
  }

  TEST_CASE("normalize_levels compacts empty levels and records the originals") {
    LevelGraph g{5, {{"a", 0}, {"b", 2}, {"c", 4}}, {{"a", "b"}, {"b", "c"}}, {}};
    auto n = normalize_levels(g);
    CHECK(n.levels == 3);
    CHECK(n.original_levels == std::vector<int>{0, 2, 4});
    CHECK(level_map(n).at("c") == 2);
  }

  TEST_CASE("subdivision of a proper graph is the identity") {
    auto g = fx::matching2().graph;
    auto s = subdivide_to_proper(g);
    CHECK(s.graph == g);
    CHECK(s.map.edges.empty());
  }

  TEST_CASE("an edge spanning three levels gains two dummies") {
    LevelGraph g{4, {{"a", 0}, {"p", 1}, {"q", 2}, {"b", 3}}, {{"a", "b"}}, {}};
    auto s = subdivide_to_proper(g);
    CHECK(is_proper(s.graph));
    REQUIRE(s.map.edges.size() == 1);
    CHECK(s.map.edges[0].dummies == std::vector<std::string>{"a|b#1", "a|b#2"});
    CHECK(s.graph.edges.size() == 3);
  }

  TEST_CASE("gadget edge of an element outside every triple is subdivided") {
    auto red = reductions::reduce_betweenness_to_tlevel(fx::btw(4, {{"1", "2", "3"}}));
    auto levels = level_map(red.instance.graph);
    CHECK(levels.at("v_4") == 1);
    CHECK(levels.at("w_4") == 4);
    auto s = subdivide_to_proper(red.instance.graph);
    bool found = false;
    for (const auto& e : s.map.edges) {
      if (e.original == Edge{"v_4", "w_4"}) {
        found = true;
        CHECK(e.dummies == std::vector<std::string>{"v_4|w_4#2", "v_4|w_4#3"});
      }
    }
    CHECK(found);
  }

  TEST_CASE("cluster infos are laminar with consistent level bounds") {
    auto c = reductions::build_cl_hierarchy(fx::btw(3, {{"1", "2", "3"}})).instance;
    auto infos = cluster_infos(c.hierarchy, c.graph);
    for (const auto& a : infos) {
      for (const auto& b : infos) {
        std::vector<std::string> both;
        std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                              std::back_inserter(both));
        bool nested = std::includes(a.members.begin(), a.members.end(), b.members.begin(), b.members.end()) ||
                      std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
        CHECK((nested || both.empty()));
      }
      CHECK(a.min_level <= a.max_level);
    }
  }
}
