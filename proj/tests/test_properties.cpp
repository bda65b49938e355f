#include "doctest.h"
#include "fixtures.hpp"
#include "levelplan/drawing.hpp"
#include "levelplan/generators.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;

namespace {

/// Random tree over leaves with occasional unary nodes.
TreeNode random_tree(gen::Rng& rng, std::vector<std::string> leaves, int& next_id) {
  auto wrap = [&](TreeNode t) {
    while (rng.chance(0.25)) t = fx::node("x" + std::to_string(next_id++), {t});
    return t;
  };
  if (leaves.size() == 1) return wrap(fx::leaf(leaves[0]));
  rng.shuffle(leaves.begin(), leaves.end());
  std::size_t parts = 2 + rng.below(leaves.size() - 1);
  std::vector<std::vector<std::string>> groups(parts);
  for (std::size_t i = 0; i < leaves.size(); ++i) groups[i < parts ? i : rng.below(parts)].push_back(leaves[i]);
  std::vector<TreeNode> ch;
  for (auto& g : groups) ch.push_back(random_tree(rng, g, next_id));
  return wrap(fx::node("x" + std::to_string(next_id++), ch));
}

std::set<std::vector<std::string>> compatible(const TreeNode& t) {
  std::set<std::vector<std::string>> out;
  for (const auto& p : fx::permutations(t.leaves())) {
    if (oracles::ordering_is_tree_compatible(t, p)) out.insert(p);
  }
  return out;
}

LevelGraph random_level_graph(gen::Rng& rng, int levels, int width, bool proper) {
  LevelGraph g;
  g.levels = levels;
  for (int l = 0; l < levels; ++l) {
    int w = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(width)));
    for (int i = 0; i < w; ++i) g.vertices.push_back({"v" + std::to_string(l) + "_" + std::to_string(i), l});
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      int d = g.vertices[j].level - g.vertices[i].level;
      if (d == 0 || (proper && d != 1)) continue;
      if (rng.chance(d == 1 ? 0.4 : 0.15)) g.edges.push_back({g.vertices[i].id, g.vertices[j].id});
    }
  }
  return g;
}

LevelOrdering random_ordering(gen::Rng& rng, const LevelGraph& g) {
  LevelOrdering o{level_members(g)};
  for (auto& row : o.levels) rng.shuffle(row.begin(), row.end());
  return o;
}

LevelOrdering mirrored(LevelOrdering o) {
  for (auto& row : o.levels) std::reverse(row.begin(), row.end());
  return o;
}

RotationSystem reversed(RotationSystem r) {
  for (auto& [v, list] : r.order) std::reverse(list.begin(), list.end());
  return r;
}

/// Equal as cyclic orders at every vertex.
bool same_rotation(const RotationSystem& a, const RotationSystem& b) {
  if (a.order.size() != b.order.size()) return false;
  for (const auto& [v, list] : a.order) {
    auto it = b.order.find(v);
    if (it == b.order.end() || it->second.size() != list.size()) return false;
    if (list.empty()) continue;
    auto doubled = it->second;
    doubled.insert(doubled.end(), it->second.begin(), it->second.end());
    if (std::search(doubled.begin(), doubled.end(), list.begin(), list.end()) == doubled.end()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("subdivision output is proper and keeps the level structure") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      auto g = random_level_graph(rng, 2 + trial % 4, 3, false);
      auto s = subdivide_to_proper(g);
      CHECK(is_proper(s.graph));
      CHECK(validate_instance(s.graph).empty());
      CHECK(s.graph.levels == g.levels);
      std::size_t extra = 0;
      for (const auto& e : s.map.edges) extra += e.dummies.size();
      CHECK(s.graph.vertices.size() == g.vertices.size() + extra);
      CHECK(s.graph.edges.size() == g.edges.size() + extra);
    }
  }

  TEST_CASE("tree normalization is idempotent and keeps compatible orders") {
    gen::Rng rng(12);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<std::string> leaves;
      for (int i = 0; i < 1 + trial % 7; ++i) leaves.push_back("l" + std::to_string(i));
      int id = 0;
      auto t = random_tree(rng, leaves, id);
      auto n = normalize_tree(t);
      CHECK(normalize_tree(n) == n);
      if (leaves.size() <= 6) CHECK(compatible(t) == compatible(n));
    }
  }

  TEST_CASE("reduction outputs validate") {
    for (std::uint64_t s = 1; s <= 60; ++s) {
      gen::GeneratorConfig c;
      c.seed = s;
      c.n = 3 + static_cast<int>(s % 3);
      c.m = 1 + static_cast<int>(s % 3);
      auto b = gen::betweenness(c);
      CHECK(validate_instance(reductions::reduce_betweenness_to_tlevel(b).instance).empty());
      CHECK(validate_instance(reductions::reduce_betweenness_to_tlevel(b, true).instance).empty());
      CHECK(validate_instance(reductions::build_cl_hierarchy(b).instance).empty());
      c.k = 1 + static_cast<int>(s % 4);
      auto t = gen::proper_tlevel(c);
      CHECK(validate_instance(reductions::reduce_tlp_to_sefe(t).instance).empty());
      auto cl = gen::proper_cl(c);
      auto lc = reductions::make_level_connected(cl).instance;
      CHECK(validate_instance(lc).empty());
      CHECK(is_level_connected(lc).connected);
      CHECK(validate_instance(reductions::clusters_to_trees(lc)).empty());
    }
  }

  TEST_CASE("generated hierarchies are laminar") {
    for (std::uint64_t s = 1; s <= 60; ++s) {
      gen::GeneratorConfig c;
      c.seed = s;
      c.depth = 1 + static_cast<int>(s % 3);
      auto cl = gen::proper_cl(c);
      auto infos = cluster_infos(cl.hierarchy, cl.graph);
      for (const auto& a : infos) {
        for (const auto& b : infos) {
          std::vector<std::string> both;
          std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                                std::back_inserter(both));
          bool nested = both.size() == a.members.size() || both.size() == b.members.size();
          CHECK((both.empty() || nested));
        }
      }
    }
  }

  TEST_CASE("pruned T-level search agrees with plain enumeration") {
    for (std::uint64_t s = 1; s <= 120; ++s) {
      gen::GeneratorConfig c;
      c.seed = s;
      c.k = 2 + static_cast<int>(s % 2);
      c.width = 3;
      auto t = gen::proper_tlevel(c);
      bool plain = false;
      fx::for_each_ordering(t.graph, [&](const LevelOrdering& o) { plain = plain || oracles::is_tlevel_witness(t, o); });
      auto found = oracles::solve_tlp_exhaustive(t);
      CHECK(plain == found.has_value());
      if (found) CHECK(oracles::is_tlevel_witness(t, *found));
    }
  }

  TEST_CASE("both backends agree on small instances") {
    int decided = 0;
    for (std::uint64_t s = 1; s <= 60; ++s) {
      gen::GeneratorConfig c;
      c.seed = s;
      c.k = 1 + static_cast<int>(s % 3);
      c.width = 1 + static_cast<int>(s % 3);
      auto t = gen::proper_tlevel(c);
      try {
        auto a = reductions::decide_proper_tlp(t, reductions::Backend::DirectOracle);
        auto b = reductions::decide_proper_tlp(t, reductions::Backend::SefeOracle);
        CHECK(a.planar == b.planar);
        if (b.certificate) CHECK(oracles::is_tlevel_witness(t, *b.certificate));
        ++decided;
      } catch (const BudgetExceeded&) {
      }
    }
    CHECK(decided >= 40);
  }

  TEST_CASE("certificate of the mirrored ordering is the reflected certificate") {
    for (std::uint64_t s = 1; s <= 80; ++s) {
      gen::GeneratorConfig c;
      c.seed = s;
      c.k = 1 + static_cast<int>(s % 4);
      c.width = 1 + static_cast<int>(s % 4);
      c.bias = gen::Bias::ForceSat;
      auto t = gen::proper_tlevel(c);
      auto o = oracles::solve_tlp_exhaustive(t);
      REQUIRE(o);
      if (mirrored(*o) == *o) continue;
      auto w = drawing::build_sefe_certificate(t, *o);
      auto r = drawing::build_sefe_certificate(t, mirrored(*o));
      INFO("seed ", s);
      CHECK(same_rotation(r.first, reversed(w.first)));
      CHECK(same_rotation(r.second, reversed(w.second)));
    }
  }

  TEST_CASE("crossing freedom matches the geometry") {
    gen::Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
      auto g = random_level_graph(rng, 2 + trial % 3, 4, true);
      auto o = random_ordering(rng, g);
      CHECK(oracles::ordering_is_crossing_free(g, o) == drawing::segment_crossings(drawing::draw_from_ordering(g, o)).empty());
    }
  }

  TEST_CASE("svg emission is deterministic") {
    gen::Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
      auto g = random_level_graph(rng, 3, 3, true);
      auto d = drawing::draw_from_ordering(g, random_ordering(rng, g));
      auto c = fx::root_only(g);
      d = drawing::build_cluster_regions(d, c);
      CHECK(drawing::emit_svg(d) == drawing::emit_svg(LevelDrawing(d)));
    }
  }
}
