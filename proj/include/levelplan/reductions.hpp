#pragma once

// The gadget constructions (Betweenness -> T-level -> clustered-level) and the
// reduction chain for proper instances (CL -> level-connected CL -> T-level ->
// SEFE), with structural checks and the two decision pipelines.

#include <optional>
#include <string>

#include "levelplan/core.hpp"
#include "levelplan/oracles.hpp"

namespace levelplan::reductions {

struct TLevelReduction {
  TLevelInstance instance;
  ReductionProvenance provenance;
};

struct CLReduction {
  CLInstance instance;
  ReductionProvenance provenance;
};

struct SefeReduction {
  SefeInstance instance;
  ReductionProvenance provenance;
};

/// Levels 0..2m+3 (or 0..2m+1 with drop_outer_levels).  Vertex ids: "v", "w",
/// "v_<a>", "w_<a>", "u_<a>_<i>", "u'_<a>_<i>" with triples numbered from 1.
TLevelReduction reduce_betweenness_to_tlevel(const BetweennessInstance& b, bool drop_outer_levels = false);

/// Graph of the standard T-level gadget with the nested cluster chain
/// rho > mu_{2m+1} > nu_{2m+1} > ... > mu_1.
CLReduction build_cl_hierarchy(const BetweennessInstance& b);

/// Ids: cycle "t:<l>", "p:<l>", "q:<l>"; tree copies "T:<l>:<node>" and
/// "T:<vertex>"; star leaves "P:<vertex>", "Q:<vertex>".  The tree root is
/// identified with t:<l>.
SefeReduction reduce_tlp_to_sefe(const TLevelInstance& t);

struct SefeStructure {
  bool g1_biconnected = false;
  bool g2_biconnected = false;
  bool common_connected = false;
  std::size_t vertices = 0;
  std::size_t tree_nodes = 0;    // n_T of the source instance
  std::size_t source_edges = 0;  // |E| of the source instance
  std::size_t g1_edges = 0;
  std::size_t g2_edges = 0;

  bool vertex_bound() const { return vertices <= 3 * tree_nodes; }
  bool edge_bound() const {
    return g1_edges <= source_edges + 2 * tree_nodes && g2_edges <= source_edges + 2 * tree_nodes;
  }
};

SefeStructure check_sefe_structure(const SefeInstance& s, const TLevelInstance& source);

/// True iff the multigraph stays connected after deleting any one vertex.
bool is_biconnected(const std::vector<std::string>& vertices, const std::vector<Edge>& edges);

/// Level i goes to 3i; edge (u,v) becomes u - d_u - d_v - v with dummies
/// "du:<u>|<v>" / "dv:<u>|<v>"; connectors "c:<cluster>:<level>:u" and
/// "c:<cluster>:<level>:v".
CLReduction make_level_connected(const CLInstance& c);

TLevelInstance clusters_to_trees(const CLInstance& c);

enum class Backend { SefeOracle, DirectOracle };

struct Decision {
  bool planar = false;
  std::optional<LevelOrdering> certificate;
  std::string note;
};

inline constexpr const char* kBackendNote =
    "decision exact; runtime exponential (exhaustive oracle backend), not the polynomial bound of the reduction chain";

Decision decide_proper_tlp(const TLevelInstance& t, Backend backend, const Budgets& budgets = Budgets::defaults());

Decision decide_proper_cl(const CLInstance& c, const Budgets& budgets = Budgets::defaults(),
                          Backend backend = Backend::DirectOracle);

}  // namespace levelplan::reductions
