#include "doctest.h"
#include "fixtures.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;
using fx::leaf;
using fx::node;

namespace {

EmbeddedGraph complete(int n) {
  EmbeddedGraph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back("k" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.push_back({"e" + std::to_string(i) + std::to_string(j), g.vertices[i], g.vertices[j]});
  }
  return g;
}

std::vector<std::string> incident(const EmbeddedGraph& g, const std::string& v) {
  std::vector<std::string> out;
  for (const auto& e : g.edges) {
    if (e.u == v || e.v == v) out.push_back(e.id);
  }
  return out;
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("single triple is satisfied by its own order") {
    auto o = oracles::solve_betweenness(fx::btw(3, {{"1", "2", "3"}}));
    REQUIRE(o);
    CHECK(*o == std::vector<std::string>{"1", "2", "3"});
  }

  TEST_CASE("cyclic triples are unsatisfiable") {
    // Oracle: none of the 6 orders satisfies all three triples.
    int good = 0;
    for (const auto& p : fx::permutations({"1", "2", "3"})) good += oracles::satisfies_betweenness(fx::cyclic(), p);
    CHECK(good == 0);
    CHECK_FALSE(oracles::solve_betweenness(fx::cyclic()));
  }

  TEST_CASE("no triples accept any order") {
    auto o = oracles::solve_betweenness(fx::btw(2, {}));
    REQUIRE(o);
    CHECK(o->size() == 2);
  }

  TEST_CASE("betweenness oracle enforces its element bound") {
    Budgets b = Budgets::defaults();
    b.max_betweenness_elements = 3;
    CHECK_THROWS_AS(oracles::solve_betweenness(fx::btw(4, {}), b), BudgetExceeded);
  }

  TEST_CASE("crossing freedom of a matching") {
    auto g = fx::matching2().graph;
    CHECK(oracles::ordering_is_crossing_free(g, {{{"a1", "a2"}, {"b1", "b2"}}}));
    CHECK_FALSE(oracles::ordering_is_crossing_free(g, {{{"a1", "a2"}, {"b2", "b1"}}}));
  }

  TEST_CASE("K2,2 crosses under all four ordering pairs") {
    int free = 0, total = 0;
    fx::for_each_ordering(fx::k22().graph, [&](const LevelOrdering& o) {
      ++total;
      free += oracles::ordering_is_crossing_free(fx::k22().graph, o);
    });
    CHECK(total == 4);
    CHECK(free == 0);
  }

  TEST_CASE("edges sharing an endpoint never cross") {
    LevelGraph g{2, {{"a", 0}, {"b1", 1}, {"b2", 1}}, {{"a", "b1"}, {"a", "b2"}}, {}};
    CHECK(oracles::ordering_is_crossing_free(g, {{{"a"}, {"b2", "b1"}}}));
  }

  TEST_CASE("tree compatibility") {
    auto star = fx::star("r", {"a1", "a2", "a3"});
    for (const auto& p : fx::permutations({"a1", "a2", "a3"})) CHECK(oracles::ordering_is_tree_compatible(star, p));
    auto t = node("r", {node("x", {leaf("a1"), leaf("a2")}), leaf("a3")});
    CHECK_FALSE(oracles::ordering_is_tree_compatible(t, {"a1", "a3", "a2"}));
    CHECK(oracles::ordering_is_tree_compatible(t, {"a1", "d", "a2", "a3"}, oracles::CompatMode::RealSubsequence));
    CHECK_FALSE(oracles::ordering_is_tree_compatible(t, {"a1", "d", "a2", "a3"}, oracles::CompatMode::AllVertices));
  }

  TEST_CASE("T-level search on two-level instances") {
    auto o = oracles::solve_tlp_exhaustive(fx::matching2());
    REQUIRE(o);
    CHECK(oracles::is_tlevel_witness(fx::matching2(), *o));
    CHECK_FALSE(oracles::solve_tlp_exhaustive(fx::k22()));
  }

  TEST_CASE("T-level search returns the first witness in lexicographic order") {
    auto o = oracles::solve_tlp_exhaustive(fx::matching2());
    REQUIRE(o);
    CHECK(o->levels == std::vector<std::vector<std::string>>{{"a1", "a2"}, {"b1", "b2"}});
  }

  TEST_CASE("gadget of cyclic triples is not T-level planar") {
    CHECK_FALSE(oracles::solve_tlp_exhaustive(reductions::reduce_betweenness_to_tlevel(fx::cyclic()).instance));
    CHECK_FALSE(oracles::solve_tlp_exhaustive(reductions::reduce_betweenness_to_tlevel(fx::cyclic(), true).instance));
  }

  TEST_CASE("T-level search honours its budget") {
    Budgets b = Budgets::defaults();
    b.max_perm_product = 3;
    CHECK_THROWS_AS(oracles::solve_tlp_exhaustive(reductions::reduce_betweenness_to_tlevel(fx::cyclic()).instance, b),
                    BudgetExceeded);
  }

  TEST_CASE("pruned search agrees with plain enumeration on every small instance") {
    // Plain oracle: enumerate every ordering and test it.
    int checked = 0;
    for (int mask = 0; mask < 512; mask += 7) {
      auto t = fx::two_level(3, {});
      for (int i = 0; i < 9; ++i) {
        if (mask >> i & 1) t.graph.edges.push_back({"a" + std::to_string(i / 3 + 1), "b" + std::to_string(i % 3 + 1)});
      }
      t.trees[0].root = node("r0", {node("x", {leaf("a1"), leaf("a2")}), leaf("a3")});
      bool plain = false;
      fx::for_each_ordering(t.graph, [&](const LevelOrdering& o) { plain = plain || oracles::is_tlevel_witness(t, o); });
      CHECK(plain == oracles::solve_tlp_exhaustive(t).has_value());
      ++checked;
    }
    CHECK(checked == 74);
  }

  TEST_CASE("root-only cluster search equals level planarity") {
    auto c = fx::root_only(fx::k22().graph);
    CHECK_FALSE(oracles::solve_cl_levelconnected(c));
    auto m = fx::root_only(fx::matching2().graph);
    m.graph.edges.push_back({"a1", "b2"});
    CHECK(oracles::solve_cl_levelconnected(m));
  }

  TEST_CASE("three-by-three matching with a corner cluster") {
    CLInstance c;
    c.graph.levels = 2;
    for (int i = 1; i <= 3; ++i) c.graph.vertices.push_back({"a" + std::to_string(i), 0});
    for (int i = 1; i <= 3; ++i) c.graph.vertices.push_back({"b" + std::to_string(i), 1});
    for (int i = 1; i <= 3; ++i) c.graph.edges.push_back({"a" + std::to_string(i), "b" + std::to_string(i)});
    c.hierarchy.root = node("root", {node("mu", {leaf("a1"), leaf("a3"), leaf("b1"), leaf("b3")}), leaf("a2"), leaf("b2")});
    REQUIRE(is_level_connected(c).connected);
    // Oracle over all 36 ordering pairs: equal permutations with 1,3 adjacent.
    int witnesses = 0;
    fx::for_each_ordering(c.graph, [&](const LevelOrdering& o) {
      witnesses += oracles::ordering_is_crossing_free(c.graph, o) && oracles::clusters_consecutive(c, o);
    });
    CHECK(witnesses == 4);
    auto o = oracles::solve_cl_levelconnected(c);
    REQUIRE(o);
    CHECK(o->levels == std::vector<std::vector<std::string>>{{"a1", "a3", "a2"}, {"b1", "b3", "b2"}});
    CHECK(oracles::solve_tlp_exhaustive(reductions::clusters_to_trees(c)).has_value());
  }

  TEST_CASE("cluster search rejects non-level-connected input") {
    CLInstance c;
    c.graph = LevelGraph{3, {{"a", 0}, {"m", 1}, {"b", 2}}, {{"a", "m"}, {"m", "b"}}, {}};
    c.hierarchy.root = node("root", {node("mu", {leaf("a"), leaf("b")}), leaf("m")});
    CHECK_THROWS_AS(oracles::solve_cl_levelconnected(c), PreconditionError);
    CHECK(oracles::check_cl_necessary(c));
  }

  TEST_CASE("necessary condition on gadgets") {
    CHECK_FALSE(oracles::check_cl_necessary(reductions::build_cl_hierarchy(fx::cyclic()).instance));
    auto sat = fx::btw(3, {{"1", "2", "3"}});
    CHECK(oracles::check_cl_necessary(reductions::build_cl_hierarchy(sat).instance));
  }

  TEST_CASE("a triangle has two faces") {
    auto g = complete(3);
    RotationSystem r;
    for (const auto& v : g.vertices) r.order[v] = incident(g, v);
    auto f = oracles::trace_faces(g, r);
    CHECK(f.faces == 2);
    CHECK(f.planar());
  }

  TEST_CASE("no rotation system of K5 is planar") {
    auto g = complete(5);
    std::vector<std::vector<std::vector<std::string>>> options;
    for (const auto& v : g.vertices) {
      auto inc = incident(g, v);
      std::vector<std::vector<std::string>> rots;
      std::vector<std::string> rest(inc.begin() + 1, inc.end());
      std::sort(rest.begin(), rest.end());
      do {
        std::vector<std::string> rot{inc[0]};
        rot.insert(rot.end(), rest.begin(), rest.end());
        rots.push_back(rot);
      } while (std::next_permutation(rest.begin(), rest.end()));
      options.push_back(rots);
    }
    int planar = 0, total = 0;
    std::function<void(std::size_t, RotationSystem&)> rec = [&](std::size_t i, RotationSystem& r) {
      if (i == g.vertices.size()) {
        ++total;
        planar += oracles::trace_faces(g, r).planar();
        return;
      }
      for (const auto& rot : options[i]) {
        r.order[g.vertices[i]] = rot;
        rec(i + 1, r);
      }
    };
    RotationSystem r;
    rec(0, r);
    CHECK(total == 7776);
    CHECK(planar == 0);
  }

  TEST_CASE("planar rotation system of K4 has four faces") {
    auto g = complete(4);
    // Straight-line drawing: k0 at the centre, k1 k2 k3 counterclockwise.
    RotationSystem r;
    r.order["k0"] = {"e01", "e02", "e03"};
    r.order["k1"] = {"e12", "e01", "e13"};
    r.order["k2"] = {"e23", "e02", "e12"};
    r.order["k3"] = {"e13", "e03", "e23"};
    auto f = oracles::trace_faces(g, r);
    CHECK(f.faces == 4);
    CHECK(f.planar());
  }

  TEST_CASE("SEFE oracle on the matching reduction") {
    auto red = reductions::reduce_tlp_to_sefe(fx::matching2());
    auto r = oracles::solve_sefe_exhaustive(red.instance);
    REQUIRE(r.embeddable);
    CHECK(oracles::is_sefe_witness(red.instance, *r.witness));
    auto o = oracles::decode_sefe_to_orderings(red.instance, red.provenance, *r.witness);
    CHECK(oracles::is_tlevel_witness(fx::matching2(), o));
  }

  TEST_CASE("SEFE oracle on the K2,2 reduction") {
    auto red = reductions::reduce_tlp_to_sefe(fx::k22());
    CHECK_FALSE(oracles::solve_sefe_exhaustive(red.instance).embeddable);
  }

  TEST_CASE("SEFE oracle honours its budget") {
    Budgets b = Budgets::defaults();
    b.max_rotation_product = 10;
    auto red = reductions::reduce_tlp_to_sefe(fx::matching2());
    CHECK_THROWS_AS(oracles::solve_sefe_exhaustive(red.instance, b), BudgetExceeded);
  }

  TEST_CASE("SEFE with a disconnected common graph is rejected") {
    SefeInstance s{{"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}}, {{"a", "b"}, {"c", "d"}}};
    CHECK_THROWS_AS(oracles::solve_sefe_exhaustive(s), PreconditionError);
  }
}
