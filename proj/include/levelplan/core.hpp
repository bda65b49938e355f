#pragma once

// Domain types shared by every part of the toolkit: level graphs, constraint
// trees, cluster hierarchies and SEFE instances, plus validation,
// normalization and edge subdivision.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace levelplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration exceeded its configured budget.  Never a verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Vertex {
  std::string id;
  int level = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Unordered vertex pair; stored endpoint order carries no meaning.
struct Edge {
  std::string u;
  std::string v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted-endpoint form, used as a set key.
Edge canonical(const Edge& e);

struct LevelGraph {
  int levels = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  /// original_levels[i] is the level index that normalized level i had on
  /// ingestion.  Empty means the identity mapping.
  std::vector<int> original_levels;

  friend bool operator==(const LevelGraph&, const LevelGraph&) = default;
};

/// Vertex id -> level.  Later duplicates are ignored.
std::map<std::string, int> level_map(const LevelGraph& g);

/// Vertex ids per level, in vertex-list order.
std::vector<std::vector<std::string>> level_members(const LevelGraph& g);

/// Rooted, order-free tree.  Leaves carry vertex ids, internal nodes carry
/// opaque node ids.  Child order is storage only and never semantic.
struct TreeNode {
  std::string id;
  bool leaf = false;
  std::vector<TreeNode> children;

  static TreeNode make_leaf(std::string id);
  static TreeNode make_node(std::string id, std::vector<TreeNode> children);

  /// Leaf ids in depth-first storage order.
  std::vector<std::string> leaves() const;
  std::size_t node_count() const;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct ConstraintTree {
  int level = 0;
  TreeNode root;

  friend bool operator==(const ConstraintTree&, const ConstraintTree&) = default;
};

struct TLevelInstance {
  LevelGraph graph;
  std::vector<ConstraintTree> trees;

  friend bool operator==(const TLevelInstance&, const TLevelInstance&) = default;
};

struct ClusterHierarchy {
  TreeNode root;

  friend bool operator==(const ClusterHierarchy&, const ClusterHierarchy&) = default;
};

struct CLInstance {
  LevelGraph graph;
  ClusterHierarchy hierarchy;

  friend bool operator==(const CLInstance&, const CLInstance&) = default;
};

/// Two edge multisets over one vertex set.  Parallel edges are allowed.
struct SefeInstance {
  std::vector<std::string> vertices;
  std::vector<Edge> e1;
  std::vector<Edge> e2;

  friend bool operator==(const SefeInstance&, const SefeInstance&) = default;
};

/// Multiset intersection E1 ∩ E2 (endpoints canonicalized).
std::vector<Edge> common_edges(const SefeInstance& s);

struct Violation {
  std::string code;
  std::string detail;
};
using ValidationReport = std::vector<Violation>;

ValidationReport validate_instance(const LevelGraph& g);
ValidationReport validate_instance(const TLevelInstance& t);
ValidationReport validate_instance(const CLInstance& c);
ValidationReport validate_instance(const SefeInstance& s);

bool is_proper(const LevelGraph& g);

struct ClusterInfo {
  std::string id;
  std::set<std::string> members;
  int min_level = 0;
  int max_level = 0;
  int depth = 0;  ///< root cluster has depth 0
  std::optional<std::string> parent;
};

/// One entry per internal node of the hierarchy, in pre-order.  Level bounds
/// are computed against g.  A hierarchy whose root is a leaf has no clusters.
std::vector<ClusterInfo> cluster_infos(const ClusterHierarchy& h, const LevelGraph& g);

/// Maps each leaf id to the id of its parent cluster.
std::map<std::string, std::string> leaf_parents(const ClusterHierarchy& h);

struct LevelGap {
  std::string cluster;
  int level = 0;  ///< missing internal edge between level and level + 1

  friend bool operator==(const LevelGap&, const LevelGap&) = default;
};

struct LevelConnectivity {
  bool connected = true;
  std::vector<LevelGap> gaps;
};

/// Throws PreconditionError on non-proper input.
LevelConnectivity is_level_connected(const CLInstance& c);

/// Contracts every internal node with exactly one child.
TreeNode normalize_tree(TreeNode t);
TLevelInstance normalize_trees(TLevelInstance t);
ClusterHierarchy normalize_trees(ClusterHierarchy h);

/// Compacts occupied levels to 0..k-1 and records the original indices.
/// Constraint trees referring to unoccupied levels keep an out-of-range level
/// and are reported by validate_instance.
LevelGraph normalize_levels(LevelGraph g);
TLevelInstance normalize_levels(TLevelInstance t);
CLInstance normalize_levels(CLInstance c);

struct SubdividedEdge {
  Edge original;                    ///< lower-level endpoint first
  std::vector<std::string> dummies; ///< one per skipped level, bottom to top
};

struct SubdivisionMap {
  std::vector<SubdividedEdge> edges;
  std::set<std::string> dummy_ids;

  bool is_dummy(const std::string& id) const { return dummy_ids.count(id) > 0; }
};

struct Subdivision {
  LevelGraph graph;
  SubdivisionMap map;
};

/// Dummy id for the vertex of (lower, upper) on `level`.
std::string dummy_id(const std::string& lower, const std::string& upper, int level);

Subdivision subdivide_to_proper(const LevelGraph& g);

/// Role of one produced vertex (or cluster) in a reduction output.
struct ProvenanceEntry {
  std::string role;
  std::map<std::string, std::string> source;

  friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

struct ReductionProvenance {
  std::map<std::string, ProvenanceEntry> entries;

  const ProvenanceEntry* find(const std::string& id) const {
    auto it = entries.find(id);
    return it == entries.end() ? nullptr : &it->second;
  }

  friend bool operator==(const ReductionProvenance&, const ReductionProvenance&) = default;
};

}  // namespace levelplan
