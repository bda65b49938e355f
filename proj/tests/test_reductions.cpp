#include "doctest.h"
#include "fixtures.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;
using namespace levelplan::reductions;
using fx::leaf;
using fx::node;

namespace {

std::vector<std::string> cluster_ids(const CLInstance& c) {
  std::vector<std::string> out;
  for (const auto& i : cluster_infos(c.hierarchy, c.graph)) out.push_back(i.id);
  return out;
}

CLInstance gap_instance() {
  CLInstance c;
  c.graph = LevelGraph{3, {{"a", 0}, {"m", 1}, {"b", 2}}, {{"a", "m"}, {"m", "b"}}, {}};
  c.hierarchy.root = node("root", {node("mu", {leaf("a"), leaf("b")}), leaf("m")});
  return c;
}

}  // namespace

TEST_SUITE("reductions") {
  TEST_CASE("gadget sizes for one triple over three elements") {
    auto r = reduce_betweenness_to_tlevel(fx::btw(3, {{"1", "2", "3"}}));
    CHECK(r.instance.graph.vertices.size() == 14);
    CHECK(r.instance.graph.edges.size() == 15);
    CHECK(r.instance.graph.levels == 6);
    CHECK(validate_instance(r.instance).empty());
  }

  TEST_CASE("dropping the outer levels removes two levels") {
    auto std_mode = reduce_betweenness_to_tlevel(fx::btw(3, {{"1", "2", "3"}}));
    auto drop = reduce_betweenness_to_tlevel(fx::btw(3, {{"1", "2", "3"}}), true);
    CHECK(drop.instance.graph.levels == std_mode.instance.graph.levels - 2);
    CHECK(validate_instance(drop.instance).empty());
  }

  TEST_CASE("gadget leaf ids") {
    auto r = reduce_betweenness_to_tlevel(fx::btw(3, {{"1", "2", "3"}}));
    auto levels = level_map(r.instance.graph);
    for (const std::string id : {"v", "w", "v_1", "w_1", "u_1_1", "u'_1_1", "u_3_1", "u'_3_1"}) CHECK(levels.count(id) == 1);
  }

  TEST_CASE("gadget provenance covers every vertex") {
    auto r = reduce_betweenness_to_tlevel(fx::btw(3, {{"1", "2", "3"}}));
    for (const auto& v : r.instance.graph.vertices) CHECK(r.provenance.find(v.id) != nullptr);
  }

  TEST_CASE("cluster chain for one triple") {
    auto c = build_cl_hierarchy(fx::btw(3, {{"1", "2", "3"}})).instance;
    CHECK(cluster_ids(c) == std::vector<std::string>{"rho", "mu3", "nu3", "mu2", "nu2", "mu1"});
    CHECK(validate_instance(c).empty());
  }

  TEST_CASE("gadget preserves satisfiability on small instances") {
    for (const auto& b : {fx::btw(3, {{"1", "2", "3"}}), fx::cyclic(), fx::btw(3, {{"1", "2", "3"}, {"2", "1", "3"}})}) {
      bool sat = oracles::solve_betweenness(b).has_value();
      CHECK(sat == oracles::solve_tlp_exhaustive(reduce_betweenness_to_tlevel(b).instance).has_value());
      CHECK(sat == oracles::check_cl_necessary(build_cl_hierarchy(b).instance).has_value());
    }
  }

  TEST_CASE("SEFE reduction of the two-by-two matching") {
    auto red = reduce_tlp_to_sefe(fx::matching2());
    CHECK(red.instance.vertices.size() == 14);
    CHECK(validate_instance(red.instance).empty());
    CHECK(std::is_sorted(red.instance.vertices.begin(), red.instance.vertices.end()));
    CHECK(std::is_sorted(red.instance.e1.begin(), red.instance.e1.end()));
    auto s = check_sefe_structure(red.instance, fx::matching2());
    CHECK(s.g1_biconnected);
    CHECK(s.g2_biconnected);
    CHECK(s.common_connected);
    CHECK(s.vertex_bound());
  }

  TEST_CASE("SEFE reduction ids") {
    auto red = reduce_tlp_to_sefe(fx::matching2());
    const auto& v = red.instance.vertices;
    for (const std::string id : {"t:0", "p:0", "q:0", "t:1", "T:a1", "P:b1", "Q:a2"}) {
      CHECK(std::binary_search(v.begin(), v.end(), id));
    }
  }

  TEST_CASE("biconnectivity") {
    CHECK(is_biconnected({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}));
    CHECK_FALSE(is_biconnected({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    CHECK(is_biconnected({"a", "b"}, {{"a", "b"}, {"a", "b"}}));
  }

  TEST_CASE("level-connected construction closes every gap") {
    auto c = gap_instance();
    auto lc = make_level_connected(c);
    CHECK(lc.instance.graph.levels == 3 * c.graph.levels - 2);
    CHECK(is_level_connected(lc.instance).connected);
    CHECK(validate_instance(lc.instance).empty());
    auto levels = level_map(lc.instance.graph);
    CHECK(levels.at("a") == 0);
    CHECK(levels.at("m") == 3);
    CHECK(levels.at("du:a|m") == 1);
    CHECK(levels.at("dv:a|m") == 2);
  }

  TEST_CASE("level-connected construction preserves planarity") {
    auto c = gap_instance();
    bool before = oracles::check_cl_necessary(c).has_value();
    auto lc = make_level_connected(c);
    CHECK(before == oracles::solve_cl_levelconnected(lc.instance).has_value());
  }

  TEST_CASE("clusters to trees keeps one tree per level") {
    auto c = fx::root_only(fx::matching2().graph);
    auto t = clusters_to_trees(c);
    CHECK(t.trees.size() == 2);
    CHECK(validate_instance(t).empty());
  }

  TEST_CASE("both backends decide the two-level fixtures") {
    for (auto b : {Backend::DirectOracle, Backend::SefeOracle}) {
      auto yes = decide_proper_tlp(fx::matching2(), b);
      CHECK(yes.planar);
      REQUIRE(yes.certificate);
      CHECK(oracles::is_tlevel_witness(fx::matching2(), *yes.certificate));
      CHECK_FALSE(decide_proper_tlp(fx::k22(), b).planar);
    }
  }

  TEST_CASE("clustered decision projects its certificate") {
    auto c = gap_instance();
    auto d = decide_proper_cl(c);
    CHECK(d.planar);
    REQUIRE(d.certificate);
    CHECK(oracles::ordering_is_crossing_free(c.graph, *d.certificate));
    CHECK(oracles::clusters_consecutive(c, *d.certificate));
    CHECK(d.note == kBackendNote);
  }

  TEST_CASE("clustered decision rejects non-proper input") {
    CLInstance c;
    c.graph = LevelGraph{3, {{"a", 0}, {"m", 1}, {"b", 2}}, {{"a", "b"}}, {}};
    c.hierarchy.root = node("root", {leaf("a"), leaf("m"), leaf("b")});
    CHECK_THROWS_AS(decide_proper_cl(c), PreconditionError);
  }
}
