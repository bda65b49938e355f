#pragma once

// Exhaustive deciders and witness checkers.  Every search here is exponential
// and guarded by an explicit budget; exceeding it throws BudgetExceeded.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levelplan/core.hpp"

namespace levelplan {

/// Per level, a left-to-right order of every vertex on that level.
struct LevelOrdering {
  std::vector<std::vector<std::string>> levels;

  friend bool operator==(const LevelOrdering&, const LevelOrdering&) = default;
};

struct BetweennessInstance {
  std::vector<std::string> elements;
  std::vector<std::array<std::string, 3>> triples;

  friend bool operator==(const BetweennessInstance&, const BetweennessInstance&) = default;
};

ValidationReport validate_instance(const BetweennessInstance& b);

/// Vertex id -> cyclic order of incident edge ids.
struct RotationSystem {
  std::map<std::string, std::vector<std::string>> order;

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};

struct LabeledEdge {
  std::string id;
  std::string u;
  std::string v;
};

/// Multigraph with explicit edge ids, the input of face tracing.
struct EmbeddedGraph {
  std::vector<std::string> vertices;
  std::vector<LabeledEdge> edges;
};

struct Budgets {
  std::uint64_t max_perm_product = 100'000'000;   // search nodes for ordering oracles
  std::uint64_t max_rotation_product = 10'000'000; // per graph, SEFE oracle
  std::size_t max_betweenness_elements = 9;

  /// Hard defaults, overridden by LEVELPLAN_BUDGET="perm=N,rotation=N,betweenness=N".
  static Budgets defaults();
};

struct SefeWitness {
  RotationSystem first;   // rotations of G1, edge ids "1:<index into e1>"
  RotationSystem second;  // rotations of G2, edge ids "2:<index into e2>"
};

struct FaceTrace {
  std::vector<std::vector<std::string>> walks;  // vertex sequence of every face
  long vertices = 0;
  long edges = 0;
  long faces = 0;

  bool planar() const { return vertices - edges + faces == 2; }
};

namespace oracles {

bool satisfies_betweenness(const BetweennessInstance& b, const std::vector<std::string>& order);

/// First satisfying permutation in lexicographic order of element positions.
std::optional<std::vector<std::string>> solve_betweenness(const BetweennessInstance& b,
                                                          const Budgets& budgets = Budgets::defaults());

/// True iff every level of o is a permutation of the vertices of that level.
bool ordering_matches_graph(const LevelGraph& g, const LevelOrdering& o);

bool ordering_is_crossing_free(const LevelGraph& g, const LevelOrdering& o);

enum class CompatMode { AllVertices, RealSubsequence };

bool ordering_is_tree_compatible(const TreeNode& tree, const std::vector<std::string>& order,
                                 CompatMode mode = CompatMode::AllVertices);

/// Independent re-check of a T-level witness.  Non-proper graphs are
/// subdivided; o must then cover the dummies too.
bool is_tlevel_witness(const TLevelInstance& t, const LevelOrdering& o);

/// Cluster vertices consecutive on every level, dummies skipped.
bool clusters_consecutive(const CLInstance& c, const LevelOrdering& o);

struct SearchStats {
  std::uint64_t nodes = 0;
};

std::optional<LevelOrdering> solve_tlp_exhaustive(const TLevelInstance& t,
                                                  const Budgets& budgets = Budgets::defaults(),
                                                  SearchStats* stats = nullptr);

std::optional<LevelOrdering> solve_cl_levelconnected(const CLInstance& c,
                                                     const Budgets& budgets = Budgets::defaults());

std::optional<LevelOrdering> check_cl_necessary(const CLInstance& c,
                                                const Budgets& budgets = Budgets::defaults());

/// Successor of an edge in a vertex's list is the next edge counterclockwise.
FaceTrace trace_faces(const EmbeddedGraph& g, const RotationSystem& r);

EmbeddedGraph first_graph(const SefeInstance& s);
EmbeddedGraph second_graph(const SefeInstance& s);

/// For each e1 index, the matched e2 index of the common edge, or -1.
std::vector<int> common_pairing(const SefeInstance& s);

/// Rotation of each vertex restricted to common edges, renamed "c:<e1 index>".
RotationSystem common_rotation(const SefeInstance& s, const RotationSystem& r, bool first);

struct SefeResult {
  bool embeddable = false;
  std::optional<SefeWitness> witness;
};

SefeResult solve_sefe_exhaustive(const SefeInstance& s, const Budgets& budgets = Budgets::defaults());

/// Checks both rotation systems are planar and agree on the common graph.
bool is_sefe_witness(const SefeInstance& s, const SefeWitness& w);

LevelOrdering decode_sefe_to_orderings(const SefeInstance& s, const ReductionProvenance& provenance,
                                       const SefeWitness& witness);

}  // namespace oracles
}  // namespace levelplan
