#include <algorithm>
#include <set>

#include "levelplan/oracles.hpp"

namespace levelplan::oracles {

// Darts: 2e leaves edge e's u end, 2e+1 leaves its v end.  The face after
// dart d continues with the successor of its reverse dart in the rotation
// of d's head.
FaceTrace trace_faces(const EmbeddedGraph& g, const RotationSystem& r) {
  std::map<std::string, std::size_t> vindex;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) vindex[g.vertices[i]] = i;
  std::map<std::string, std::size_t> eindex;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!eindex.emplace(g.edges[i].id, i).second) throw PreconditionError("trace_faces: duplicate edge id " + g.edges[i].id);
    if (!vindex.count(g.edges[i].u) || !vindex.count(g.edges[i].v))
      throw PreconditionError("trace_faces: edge " + g.edges[i].id + " has unknown endpoint");
    if (g.edges[i].u == g.edges[i].v) throw PreconditionError("trace_faces: self-loop " + g.edges[i].id);
  }

  const std::size_t darts = 2 * g.edges.size();
  std::vector<std::size_t> succ(darts, darts);
  std::vector<std::size_t> incident(g.vertices.size(), 0);
  for (const auto& e : g.edges) {
    ++incident[vindex[e.u]];
    ++incident[vindex[e.v]];
  }
  for (const auto& [vertex, ids] : r.order) {
    auto vi = vindex.find(vertex);
    if (vi == vindex.end()) throw PreconditionError("trace_faces: rotation for unknown vertex " + vertex);
    if (ids.size() != incident[vi->second])
      throw PreconditionError("trace_faces: rotation of " + vertex + " does not list every incident edge once");
    std::vector<std::size_t> out;
    std::set<std::string> seen;
    for (const auto& id : ids) {
      auto ei = eindex.find(id);
      if (ei == eindex.end() || !seen.insert(id).second)
        throw PreconditionError("trace_faces: bad edge " + id + " in rotation of " + vertex);
      const auto& e = g.edges[ei->second];
      if (e.u == vertex) {
        out.push_back(2 * ei->second);
      } else if (e.v == vertex) {
        out.push_back(2 * ei->second + 1);
      } else {
        throw PreconditionError("trace_faces: edge " + id + " not incident to " + vertex);
      }
    }
    for (std::size_t k = 0; k < out.size(); ++k) succ[out[k]] = out[(k + 1) % out.size()];
  }
  for (std::size_t d = 0; d < darts; ++d) {
    if (succ[d] == darts) throw PreconditionError("trace_faces: rotation system misses a vertex");
  }

  auto tail = [&](std::size_t d) {
    const auto& e = g.edges[d / 2];
    return d % 2 == 0 ? e.u : e.v;
  };

  FaceTrace out;
  out.vertices = static_cast<long>(g.vertices.size());
  out.edges = static_cast<long>(g.edges.size());
  std::vector<bool> used(darts, false);
  for (std::size_t start = 0; start < darts; ++start) {
    if (used[start]) continue;
    std::vector<std::string> walk;
    std::size_t d = start;
    while (!used[d]) {
      used[d] = true;
      walk.push_back(tail(d));
      d = succ[d ^ 1];
    }
    out.walks.push_back(std::move(walk));
  }
  out.faces = g.edges.empty() ? 1 : static_cast<long>(out.walks.size());
  return out;
}

}  // namespace levelplan::oracles
