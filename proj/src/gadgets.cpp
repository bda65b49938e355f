#include <map>
#include <set>

#include "levelplan/reductions.hpp"

namespace levelplan::reductions {

namespace {

struct Builder {
  TLevelInstance t;
  ReductionProvenance prov;
  std::set<std::string> ids;
  std::set<Edge> edges;

  void vertex(const std::string& id, int level, std::string role, std::map<std::string, std::string> source) {
    if (!ids.insert(id).second) throw Error("gadget: generated vertex id collides: " + id);
    t.graph.vertices.push_back(Vertex{id, level});
    prov.entries[id] = ProvenanceEntry{std::move(role), std::move(source)};
  }

  // Parallel paths between the same two vertices collapse to one edge.
  void edge(const std::string& a, const std::string& b) {
    if (edges.insert(canonical(Edge{a, b})).second) t.graph.edges.push_back(Edge{a, b});
  }
};

const char* const kSlots[3] = {"a", "b", "d"};

TreeNode star(const std::string& id, const std::vector<std::string>& leaves) {
  std::vector<TreeNode> children;
  for (const auto& l : leaves) children.push_back(TreeNode::make_leaf(l));
  return normalize_tree(TreeNode::make_node(id, std::move(children)));
}

std::string lower(const std::string& a, std::size_t i) { return "u_" + a + "_" + std::to_string(i); }
std::string upper(const std::string& a, std::size_t i) { return "u'_" + a + "_" + std::to_string(i); }

}  // namespace

TLevelReduction reduce_betweenness_to_tlevel(const BetweennessInstance& b, bool drop_outer_levels) {
  auto report = validate_instance(b);
  if (!report.empty()) throw PreconditionError("reduce_betweenness_to_tlevel: invalid instance: " + report[0].code);
  const int m = static_cast<int>(b.triples.size());
  // Level of the lower vertices of triple i (1-based) and of w.
  const int shift = drop_outer_levels ? 1 : 0;
  auto tri_level = [&](std::size_t i) { return 2 * static_cast<int>(i) - shift; };
  const int top = 2 * m + 3 - 2 * shift;

  Builder g;
  g.t.graph.levels = top + 1;
  g.vertex("v", 0, "source", {});
  std::map<std::string, std::string> last;
  if (!drop_outer_levels) {
    for (const auto& a : b.elements) {
      g.vertex("v_" + a, 1, "start", {{"element", a}});
      g.edge("v", "v_" + a);
      last[a] = "v_" + a;
    }
  } else {
    for (const auto& a : b.elements) last[a] = "v";
  }

  g.t.trees.push_back(ConstraintTree{0, TreeNode::make_leaf("v")});
  if (!drop_outer_levels) {
    std::vector<std::string> starts;
    for (const auto& a : b.elements) starts.push_back("v_" + a);
    g.t.trees.push_back(ConstraintTree{1, star("s1", starts)});
  }

  for (std::size_t i = 1; i <= b.triples.size(); ++i) {
    const auto& tri = b.triples[i - 1];
    const int lo = tri_level(i);
    for (int s = 0; s < 3; ++s) {
      const auto& a = tri[static_cast<std::size_t>(s)];
      std::map<std::string, std::string> src{{"triple", std::to_string(i)}, {"element", a}, {"slot", kSlots[s]}};
      auto with_pred = src;
      with_pred["predecessor"] = last[a];
      g.vertex(lower(a, i), lo, "triple-lower", with_pred);
      g.vertex(upper(a, i), lo + 1, "triple-upper", src);
      g.edge(last[a], lower(a, i));
      g.edge(lower(a, i), upper(a, i));
      last[a] = upper(a, i);
    }
    const auto& [alpha, beta, delta] = tri;
    g.t.trees.push_back(ConstraintTree{
        lo, TreeNode::make_node("r" + std::to_string(lo),
                                {TreeNode::make_node("x" + std::to_string(lo), {TreeNode::make_leaf(lower(beta, i)),
                                                                                  TreeNode::make_leaf(lower(delta, i))}),
                                 TreeNode::make_leaf(lower(alpha, i))})});
    g.t.trees.push_back(ConstraintTree{
        lo + 1,
        TreeNode::make_node("r" + std::to_string(lo + 1),
                            {TreeNode::make_node("x" + std::to_string(lo + 1), {TreeNode::make_leaf(upper(alpha, i)),
                                                                                  TreeNode::make_leaf(upper(beta, i))}),
                             TreeNode::make_leaf(upper(delta, i))})});
  }

  if (!drop_outer_levels) {
    std::vector<std::string> ends;
    for (const auto& a : b.elements) {
      g.vertex("w_" + a, top - 1, "end", {{"element", a}, {"predecessor", last[a]}});
      g.edge(last[a], "w_" + a);
      last[a] = "w_" + a;
      ends.push_back("w_" + a);
    }
    g.t.trees.push_back(ConstraintTree{top - 1, star("s" + std::to_string(top - 1), ends)});
  }
  g.vertex("w", top, "sink", {});
  for (const auto& a : b.elements) g.edge(last[a], "w");
  g.t.trees.push_back(ConstraintTree{top, TreeNode::make_leaf("w")});

  return TLevelReduction{std::move(g.t), std::move(g.prov)};
}

CLReduction build_cl_hierarchy(const BetweennessInstance& b) {
  auto base = reduce_betweenness_to_tlevel(b, false);
  const std::size_t m = b.triples.size();
  ReductionProvenance prov = base.provenance;
  auto cluster = [&](const std::string& id, const std::string& role, std::size_t index) {
    prov.entries[id] = ProvenanceEntry{role, {{"index", std::to_string(index)}}};
  };
  auto mu = [](std::size_t i) { return "mu" + std::to_string(i); };
  auto nu = [](std::size_t i) { return "nu" + std::to_string(i); };

  // Built innermost first: mu_1 holds v and every v_j.
  std::vector<TreeNode> inner{TreeNode::make_leaf("v")};
  for (const auto& a : b.elements) inner.push_back(TreeNode::make_leaf("v_" + a));
  TreeNode node = TreeNode::make_node(mu(1), std::move(inner));
  cluster(mu(1), "cluster-mu", 1);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& [alpha, beta, delta] = b.triples[i - 1];
    node = TreeNode::make_node(nu(2 * i), {TreeNode::make_leaf(lower(beta, i)), TreeNode::make_leaf(lower(delta, i)),
                                           std::move(node)});
    cluster(nu(2 * i), "cluster-nu", 2 * i);
    node = TreeNode::make_node(mu(2 * i), {TreeNode::make_leaf(lower(alpha, i)), std::move(node)});
    cluster(mu(2 * i), "cluster-mu", 2 * i);
    node = TreeNode::make_node(nu(2 * i + 1), {TreeNode::make_leaf(upper(alpha, i)),
                                               TreeNode::make_leaf(upper(beta, i)), std::move(node)});
    cluster(nu(2 * i + 1), "cluster-nu", 2 * i + 1);
    node = TreeNode::make_node(mu(2 * i + 1), {TreeNode::make_leaf(upper(delta, i)), std::move(node)});
    cluster(mu(2 * i + 1), "cluster-mu", 2 * i + 1);
  }
  std::vector<TreeNode> top{TreeNode::make_leaf("w")};
  for (const auto& a : b.elements) top.push_back(TreeNode::make_leaf("w_" + a));
  top.push_back(std::move(node));
  cluster("rho", "cluster-rho", 0);

  CLInstance c{std::move(base.instance.graph), ClusterHierarchy{TreeNode::make_node("rho", std::move(top))}};
  return CLReduction{std::move(c), std::move(prov)};
}

}  // namespace levelplan::reductions
