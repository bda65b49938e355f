#include "doctest.h"

#include "levelplan/drawing.hpp"
#include "levelplan/generators.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;

namespace {

TLevelInstance matching2x2() {
  TLevelInstance t;
  t.graph.levels = 2;
  t.graph.vertices = {{"a1", 0}, {"a2", 0}, {"b1", 1}, {"b2", 1}};
  t.graph.edges = {{"a1", "b1"}, {"a2", "b2"}};
  t.trees = {{0, TreeNode::make_node("r0", {TreeNode::make_leaf("a1"), TreeNode::make_leaf("a2")})},
             {1, TreeNode::make_node("r1", {TreeNode::make_leaf("b1"), TreeNode::make_leaf("b2")})}};
  return t;
}

}  // namespace

TEST_CASE("matching reduction has fourteen vertices and a valid certificate") {
  auto t = matching2x2();
  auto red = reductions::reduce_tlp_to_sefe(t);
  CHECK(red.instance.vertices.size() == 14);
  auto st = reductions::check_sefe_structure(red.instance, t);
  CHECK(st.g1_biconnected);
  CHECK(st.g2_biconnected);
  CHECK(st.common_connected);
  LevelOrdering o{{{"a1", "a2"}, {"b1", "b2"}}};
  auto w = drawing::build_sefe_certificate(t, o);
  CHECK(oracles::is_sefe_witness(red.instance, w));
  auto back = oracles::decode_sefe_to_orderings(red.instance, red.provenance, w);
  CHECK(oracles::is_tlevel_witness(t, back));
}

TEST_CASE("certificates on random proper instances") {
  int witnesses = 0, failures = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    gen::GeneratorConfig c;
    c.seed = seed;
    c.kind = gen::Kind::ProperTLevel;
    c.k = 1 + static_cast<int>(seed % 5);
    c.width = 1 + static_cast<int>(seed % 4);
    c.bias = gen::Bias::ForceSat;
    auto t = gen::proper_tlevel(c);
    auto o = oracles::solve_tlp_exhaustive(t);
    REQUIRE(o);
    ++witnesses;
    auto red = reductions::reduce_tlp_to_sefe(t);
    auto w = drawing::build_sefe_certificate(t, *o);
    bool ok = oracles::is_sefe_witness(red.instance, w);
    bool round = ok && oracles::is_tlevel_witness(t, oracles::decode_sefe_to_orderings(red.instance, red.provenance, w));
    if (!ok || !round) {
      ++failures;
      if (failures < 4) MESSAGE("seed " << seed << " planar/common " << ok << " roundtrip " << round);
    }
  }
  CHECK(failures == 0);
  CHECK(witnesses == 300);
}
