#include "levelplan/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "levelplan/reductions.hpp"

namespace levelplan::gen {

namespace {

constexpr int kAttempts = 500;

std::string lvl(long v) { return std::to_string(v); }

}  // namespace

Kind parse_kind(const std::string& s) {
  if (s == "betweenness") return Kind::Betweenness;
  if (s == "proper-tlevel") return Kind::ProperTLevel;
  if (s == "proper-cl") return Kind::ProperCL;
  if (s == "level-connected-cl") return Kind::LevelConnectedCL;
  throw PreconditionError("unknown generator kind: " + s);
}

Bias parse_bias(const std::string& s) {
  if (s == "none") return Bias::None;
  if (s == "force-sat") return Bias::ForceSat;
  if (s == "force-unsat") return Bias::ForceUnsat;
  throw PreconditionError("unknown bias: " + s);
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Betweenness: return "betweenness";
    case Kind::ProperTLevel: return "proper-tlevel";
    case Kind::ProperCL: return "proper-cl";
    case Kind::LevelConnectedCL: return "level-connected-cl";
  }
  return "";
}

std::string to_string(Bias b) {
  switch (b) {
    case Bias::None: return "none";
    case Bias::ForceSat: return "force-sat";
    case Bias::ForceUnsat: return "force-unsat";
  }
  return "";
}

Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

bool Rng::chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return r.next();
}

namespace {

BetweennessInstance betweenness_once(const GeneratorConfig& c, Rng& rng, bool sat) {
  BetweennessInstance b;
  for (int i = 1; i <= c.n; ++i) b.elements.push_back(std::to_string(i));
  std::vector<std::string> order = b.elements;
  rng.shuffle(order.begin(), order.end());
  for (int t = 0; t < c.m; ++t) {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    rng.shuffle(pos.begin(), pos.end());
    pos.resize(3);
    if (sat) {
      std::sort(pos.begin(), pos.end());
      if (rng.chance(0.5)) std::reverse(pos.begin(), pos.end());
    }
    b.triples.push_back({order[pos[0]], order[pos[1]], order[pos[2]]});
  }
  return b;
}

/// Random tree over seq.  With ordered set, every subtree is a contiguous
/// run of seq.
TreeNode random_tree(std::vector<std::string> seq, bool ordered, Rng& rng, const std::string& prefix, int& counter) {
  if (seq.size() == 1) return TreeNode::make_leaf(seq[0]);
  if (!ordered) rng.shuffle(seq.begin(), seq.end());
  const std::size_t groups = 2 + rng.below(seq.size() - 1);
  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i < seq.size(); ++i) cuts.push_back(i);
  rng.shuffle(cuts.begin(), cuts.end());
  cuts.resize(groups - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(seq.size());
  std::vector<TreeNode> children;
  std::string id = prefix + lvl(counter++);
  std::size_t from = 0;
  for (std::size_t to : cuts) {
    children.push_back(
        random_tree(std::vector<std::string>(seq.begin() + static_cast<long>(from), seq.begin() + static_cast<long>(to)),
                    ordered, rng, prefix, counter));
    from = to;
  }
  return TreeNode::make_node(id, std::move(children));
}

bool crosses(const std::map<std::string, std::size_t>& pos, const Edge& a, const Edge& b) {
  if (a.u == b.u || a.v == b.v) return false;
  return (pos.at(a.u) < pos.at(b.u)) != (pos.at(a.v) < pos.at(b.v));
}

struct Skeleton {
  LevelGraph graph;
  std::vector<std::vector<std::string>> order;  // a planar ordering when sat-biased
};

/// Random proper level graph.  With sat set, edges never cross the returned
/// order.
Skeleton random_graph(const GeneratorConfig& c, Rng& rng, bool sat) {
  if (c.k < 1 || c.width < 1) throw PreconditionError("generator: k and width must be positive");
  Skeleton s;
  s.graph.levels = c.k;
  std::map<std::string, std::size_t> pos;
  for (int l = 0; l < c.k; ++l) {
    const std::size_t count = 1 + rng.below(static_cast<std::size_t>(c.width));
    std::vector<std::string> row;
    for (std::size_t i = 0; i < count; ++i) {
      std::string id = "v" + lvl(l) + "_" + lvl(static_cast<long>(i));
      s.graph.vertices.push_back(Vertex{id, l});
      row.push_back(id);
    }
    rng.shuffle(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size(); ++i) pos[row[i]] = i;
    s.order.push_back(row);
  }
  for (int l = 0; l + 1 < c.k; ++l) {
    std::vector<Edge> candidates;
    for (const auto& a : s.order[static_cast<std::size_t>(l)]) {
      for (const auto& b : s.order[static_cast<std::size_t>(l + 1)]) candidates.push_back(Edge{a, b});
    }
    std::sort(candidates.begin(), candidates.end());
    rng.shuffle(candidates.begin(), candidates.end());
    std::vector<Edge> chosen;
    for (const auto& e : candidates) {
      if (!rng.chance(c.edge_density)) continue;
      if (sat && std::any_of(chosen.begin(), chosen.end(), [&](const Edge& f) { return crosses(pos, e, f); })) continue;
      chosen.push_back(e);
    }
    std::sort(chosen.begin(), chosen.end());
    s.graph.edges.insert(s.graph.edges.end(), chosen.begin(), chosen.end());
  }
  return s;
}

TLevelInstance tlevel_once(const GeneratorConfig& c, Rng& rng, bool sat) {
  auto s = random_graph(c, rng, sat);
  TLevelInstance t;
  t.graph = s.graph;
  for (int l = 0; l < c.k; ++l) {
    int counter = 0;
    auto row = s.order[static_cast<std::size_t>(l)];
    if (!sat) std::sort(row.begin(), row.end());
    t.trees.push_back(ConstraintTree{l, random_tree(row, sat, rng, "n" + lvl(l) + "_", counter)});
  }
  return t;
}

/// Recursive laminar split.  segments[l] holds the members on level l, in
/// order when sat is set, so every cluster stays a contiguous run per level.
void split(TreeNode& node, std::vector<std::vector<std::string>> segments, int depth, const GeneratorConfig& c, Rng& rng,
           bool sat, int& counter) {
  std::size_t total = 0;
  for (const auto& s : segments) total += s.size();
  const std::size_t groups = 2 + rng.below(2);
  std::vector<std::vector<std::vector<std::string>>> parts(groups, std::vector<std::vector<std::string>>(segments.size()));
  for (std::size_t l = 0; l < segments.size(); ++l) {
    auto seg = segments[l];
    if (!sat) rng.shuffle(seg.begin(), seg.end());
    std::vector<std::size_t> cuts;
    for (std::size_t g = 0; g + 1 < groups; ++g) cuts.push_back(rng.below(seg.size() + 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(seg.size());
    std::size_t from = 0;
    for (std::size_t g = 0; g < groups; ++g) {
      parts[g][l].assign(seg.begin() + static_cast<long>(from), seg.begin() + static_cast<long>(cuts[g]));
      from = cuts[g];
    }
  }
  for (auto& part : parts) {
    std::size_t size = 0;
    for (const auto& s : part) size += s.size();
    if (size == 0) continue;
    if (size == 1 || size == total || depth >= c.depth || rng.chance(0.3)) {
      for (const auto& s : part) {
        for (const auto& id : s) node.children.push_back(TreeNode::make_leaf(id));
      }
      continue;
    }
    TreeNode child = TreeNode::make_node("C" + lvl(counter++), {});
    split(child, part, depth + 1, c, rng, sat, counter);
    node.children.push_back(std::move(child));
  }
}

CLInstance cl_once(const GeneratorConfig& c, Rng& rng, bool sat, Skeleton* keep = nullptr) {
  auto s = random_graph(c, rng, sat);
  if (keep) *keep = s;
  CLInstance inst;
  inst.graph = s.graph;
  int counter = 1;
  inst.hierarchy.root = TreeNode::make_node("C0", {});
  auto segments = s.order;
  if (!sat) {
    for (auto& row : segments) std::sort(row.begin(), row.end());
  }
  split(inst.hierarchy.root, segments, 0, c, rng, sat, counter);
  inst.hierarchy = normalize_trees(inst.hierarchy);
  return inst;
}

/// Adds one internal edge per gap, keeping the sat order crossing-free.
/// Returns false when some gap cannot be closed.
bool close_gaps(CLInstance& inst, const std::vector<std::vector<std::string>>* order, Rng& rng) {
  std::map<std::string, std::size_t> pos;
  if (order) {
    for (const auto& row : *order) {
      for (std::size_t i = 0; i < row.size(); ++i) pos[row[i]] = i;
    }
  }
  auto levels = level_map(inst.graph);
  for (int round = 0; round < 64; ++round) {
    auto conn = is_level_connected(inst);
    if (conn.connected) return true;
    const auto& gap = conn.gaps.front();
    std::set<std::string> members;
    for (const auto& info : cluster_infos(inst.hierarchy, inst.graph)) {
      if (info.id == gap.cluster) members = info.members;
    }
    std::set<Edge> present;
    for (const auto& e : inst.graph.edges) present.insert(canonical(e));
    std::vector<Edge> options;
    for (const auto& a : members) {
      if (levels.at(a) != gap.level) continue;
      for (const auto& b : members) {
        if (levels.at(b) != gap.level + 1) continue;
        Edge e{a, b};
        if (present.count(canonical(e))) continue;
        if (order && std::any_of(inst.graph.edges.begin(), inst.graph.edges.end(), [&](const Edge& f) {
              Edge g = levels.at(f.u) < levels.at(f.v) ? f : Edge{f.v, f.u};
              return levels.at(g.u) == gap.level && crosses(pos, e, g);
            }))
          continue;
        options.push_back(e);
      }
    }
    if (options.empty()) return false;
    inst.graph.edges.push_back(options[rng.below(options.size())]);
  }
  return false;
}

template <class Make, class Sat>
auto rejection(const GeneratorConfig& c, Make make, Sat is_sat) {
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(attempt)));
    auto inst = make(rng);
    if (!inst) continue;
    if (c.bias == Bias::None) return *inst;
    if (is_sat(*inst) == (c.bias == Bias::ForceSat)) return *inst;
  }
  throw PreconditionError("generator: unsatisfiable size constraints for " + to_string(c.kind) + " with bias " +
                          to_string(c.bias));
}

}  // namespace

BetweennessInstance betweenness(const GeneratorConfig& c) {
  if (c.n < 0 || c.m < 0) throw PreconditionError("generator: n and m must be non-negative");
  if (c.m > 0 && c.n < 3) throw PreconditionError("generator: triples need at least three elements");
  if (c.bias == Bias::ForceUnsat && c.m < 2) throw PreconditionError("generator: unsatisfiable needs at least two triples");
  if (c.bias == Bias::ForceSat) {
    Rng rng(derive_seed(c.seed, 0));
    return betweenness_once(c, rng, true);
  }
  auto b = rejection(
      c, [&](Rng& rng) { return std::optional(betweenness_once(c, rng, false)); },
      [](const BetweennessInstance& x) { return oracles::solve_betweenness(x).has_value(); });
  return b;
}

TLevelInstance proper_tlevel(const GeneratorConfig& c) {
  const bool sat = c.bias == Bias::ForceSat;
  return rejection(
      c, [&](Rng& rng) { return std::optional(tlevel_once(c, rng, sat)); },
      [](const TLevelInstance& t) { return oracles::solve_tlp_exhaustive(t).has_value(); });
}

CLInstance proper_cl(const GeneratorConfig& c) {
  const bool sat = c.bias == Bias::ForceSat;
  return rejection(
      c, [&](Rng& rng) { return std::optional(cl_once(c, rng, sat)); },
      [](const CLInstance& x) { return reductions::decide_proper_cl(x).planar; });
}

CLInstance level_connected_cl(const GeneratorConfig& c) {
  const bool sat = c.bias == Bias::ForceSat;
  return rejection(
      c,
      [&](Rng& rng) -> std::optional<CLInstance> {
        Skeleton s;
        auto inst = cl_once(c, rng, sat, &s);
        if (!close_gaps(inst, sat ? &s.order : nullptr, rng)) return std::nullopt;
        std::sort(inst.graph.edges.begin(), inst.graph.edges.end());
        return inst;
      },
      [](const CLInstance& x) { return oracles::solve_cl_levelconnected(x).has_value(); });
}

Instance generate(const GeneratorConfig& c) {
  switch (c.kind) {
    case Kind::Betweenness: return betweenness(c);
    case Kind::ProperTLevel: return proper_tlevel(c);
    case Kind::ProperCL: return proper_cl(c);
    case Kind::LevelConnectedCL: return level_connected_cl(c);
  }
  throw PreconditionError("generator: unknown kind");
}

}  // namespace levelplan::gen
