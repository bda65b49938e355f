#include "doctest.h"
#include "fixtures.hpp"
#include "levelplan/drawing.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;
using namespace levelplan::drawing;

TEST_SUITE("drawing") {
  TEST_CASE("rank placement") {
    auto g = fx::matching2().graph;
    auto d = draw_from_ordering(g, {{{"a2", "a1"}, {"b1", "b2"}}});
    CHECK(d.coords.at("a2") == Point{1, 0});
    CHECK(d.coords.at("a1") == Point{2, 0});
    CHECK(d.coords.at("b2") == Point{2, 1});
    CHECK(ordering_of(d).levels == std::vector<std::vector<std::string>>{{"a2", "a1"}, {"b1", "b2"}});
  }

  TEST_CASE("segment crossings of K2,2") {
    auto g = fx::k22().graph;
    auto d = draw_from_ordering(g, {{{"a1", "a2"}, {"b1", "b2"}}});
    auto hits = segment_crossings(d);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].a == Edge{"a1", "b2"});
    CHECK(hits[0].b == Edge{"a2", "b1"});
    CHECK(degeneracies(d).empty());
  }

  TEST_CASE("a vertex on a segment is a degeneracy") {
    LevelDrawing d;
    d.levels = 3;
    d.coords = {{"x", {1, 0}}, {"y", {1, 1}}, {"z", {1, 2}}};
    d.edges = {{"x", "z"}};
    auto r = degeneracies(d);
    REQUIRE(r.size() == 1);
    CHECK(r[0].vertex == "y");
  }

  TEST_CASE("decimal rendering rounds half away from zero") {
    CHECK(decimal6(Rational(1, 3)) == "0.333333");
    CHECK(decimal6(Rational(2, 3)) == "0.666667");
    CHECK(decimal6(Rational(-1, 2000000)) == "-0.000001");
    CHECK(decimal6(Rational(5)) == "5.000000");
  }

  TEST_CASE("gadget drawing from a satisfying order is clean") {
    auto b = fx::btw(3, {{"1", "2", "3"}});
    auto c = reductions::build_cl_hierarchy(b).instance;
    auto d = draw_from_betweenness_solution(b, {"1", "2", "3"});
    CHECK(segment_crossings(d).empty());
    CHECK(degeneracies(d).empty());
    auto eps = choose_epsilon(d, c);
    CHECK(eps > 0);
    auto full = build_cluster_regions(d, c, eps);
    CHECK(full.regions.size() == 6);
    CHECK(validate_cl_drawing(full, c).empty());
  }

  TEST_CASE("an oversized epsilon is reported") {
    auto b = fx::btw(3, {{"1", "2", "3"}});
    auto c = reductions::build_cl_hierarchy(b).instance;
    auto full = build_cluster_regions(draw_from_betweenness_solution(b, {"1", "2", "3"}), c, Rational(10));
    CHECK_FALSE(validate_cl_drawing(full, c).empty());
  }

  TEST_CASE("regions are counterclockwise") {
    auto c = fx::root_only(fx::matching2().graph);
    auto d = build_cluster_regions(draw_from_ordering(c.graph, {{{"a1", "a2"}, {"b1", "b2"}}}), c);
    for (const auto& [id, poly] : d.regions) {
      Rational area = 0;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        area += p.x * q.y - q.x * p.y;
      }
      CHECK(area > 0);
    }
  }

  TEST_CASE("svg output is deterministic and well formed") {
    auto b = fx::btw(3, {{"1", "2", "3"}});
    auto c = reductions::build_cl_hierarchy(b).instance;
    auto d = build_cluster_regions(draw_from_betweenness_solution(b, {"1", "2", "3"}), c);
    auto s = emit_svg(d);
    CHECK(s == emit_svg(d));
    CHECK(s.rfind("<?xml", 0) == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("u&apos;_1_1") != std::string::npos);
    CHECK(emit_svg(d, {60, 40, false}).find("<text") == std::string::npos);
  }
}
