#include <algorithm>
#include <set>

#include "geometry.hpp"
#include "levelplan/drawing.hpp"
#include "levelplan/reductions.hpp"

namespace levelplan::drawing {

namespace {

std::string edge_name(const Edge& e) { return "(" + e.u + "," + e.v + ")"; }

std::string point_name(const Point& p) { return "(" + p.x.str() + "," + p.y.str() + ")"; }

// Segment of e, or nothing when an endpoint has no coordinates.
std::optional<std::pair<Point, Point>> segment(const LevelDrawing& d, const Edge& e) {
  auto a = d.coords.find(e.u), b = d.coords.find(e.v);
  if (a == d.coords.end() || b == d.coords.end()) return std::nullopt;
  return std::make_pair(a->second, b->second);
}

// Square of half side r around every point, then the hull.
std::vector<Point> inflate(const std::vector<Point>& pts, const Rational& r) {
  std::vector<Point> corners;
  for (const auto& p : pts) {
    corners.push_back({p.x - r, p.y - r});
    corners.push_back({p.x + r, p.y - r});
    corners.push_back({p.x + r, p.y + r});
    corners.push_back({p.x - r, p.y + r});
  }
  return geom::convex_hull(std::move(corners));
}

}  // namespace

LevelDrawing draw_from_ordering(const LevelGraph& g, const LevelOrdering& o) {
  LevelGraph drawn = g;
  if (!oracles::ordering_matches_graph(g, o)) {
    if (is_proper(g)) throw PreconditionError("draw_from_ordering: ordering does not match the graph");
    drawn = subdivide_to_proper(g).graph;
    if (!oracles::ordering_matches_graph(drawn, o))
      throw PreconditionError("draw_from_ordering: ordering matches neither the graph nor its subdivision");
  }
  LevelDrawing d;
  d.levels = drawn.levels;
  for (std::size_t l = 0; l < o.levels.size(); ++l) {
    for (std::size_t i = 0; i < o.levels[l].size(); ++i)
      d.coords[o.levels[l][i]] = Point{Rational(static_cast<long>(i + 1)), Rational(static_cast<long>(l))};
  }
  d.edges = drawn.edges;
  return d;
}

LevelOrdering ordering_of(const LevelDrawing& d) {
  std::vector<std::vector<std::pair<Rational, std::string>>> rows(static_cast<std::size_t>(std::max(d.levels, 0)));
  for (const auto& [id, p] : d.coords) {
    if (p.y < 0 || p.y >= d.levels || denominator(p.y) != 1) continue;
    rows[static_cast<std::size_t>(numerator(p.y).convert_to<long>())].push_back({p.x, id});
  }
  LevelOrdering o;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    std::vector<std::string> ids;
    for (auto& [x, id] : row) ids.push_back(id);
    o.levels.push_back(std::move(ids));
  }
  return o;
}

std::vector<SegmentHit> segment_crossings(const LevelDrawing& d) {
  std::vector<SegmentHit> out;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    auto si = segment(d, d.edges[i]);
    if (!si) continue;
    for (std::size_t j = i + 1; j < d.edges.size(); ++j) {
      const auto& a = d.edges[i];
      const auto& b = d.edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      auto sj = segment(d, b);
      if (!sj) continue;
      if (geom::segments_intersect(si->first, si->second, sj->first, sj->second)) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<Degeneracy> degeneracies(const LevelDrawing& d) {
  std::vector<Degeneracy> out;
  for (const auto& e : d.edges) {
    auto s = segment(d, e);
    if (!s) continue;
    for (const auto& [id, p] : d.coords) {
      if (id == e.u || id == e.v) continue;
      if (geom::on_segment(p, s->first, s->second)) out.push_back({e, id});
    }
  }
  return out;
}

LevelDrawing draw_from_betweenness_solution(const BetweennessInstance& b, const std::vector<std::string>& order) {
  if (!oracles::satisfies_betweenness(b, order))
    throw PreconditionError("draw_from_betweenness_solution: ordering does not satisfy every triple");
  auto red = reductions::reduce_betweenness_to_tlevel(b, false);
  std::map<std::string, long> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<long>(i + 1);
  const Rational middle = Rational(static_cast<long>(order.size()) + 1) / 2;

  LevelDrawing d;
  d.levels = red.instance.graph.levels;
  for (const auto& v : red.instance.graph.vertices) {
    const auto& entry = red.provenance.entries.at(v.id);
    auto el = entry.source.find("element");
    Rational x = el == entry.source.end() ? middle : Rational(rank.at(el->second));
    d.coords[v.id] = Point{x, Rational(v.level)};
  }
  d.edges = red.instance.graph.edges;
  return d;
}

// The unit is a power of two below a quarter of the smallest nonzero
// clearance, divided by (max depth + 1).  Clearances: vertex to vertex,
// vertex to non-incident segment, non-member vertex to cluster hull, segment
// to a hull it misses, and hull to hull for disjoint hulls.
Rational choose_epsilon(const LevelDrawing& d, const CLInstance& c) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& d2) {
    if (d2 > 0 && (!best || d2 < *best)) best = d2;
  };
  std::vector<std::pair<std::string, Point>> pts(d.coords.begin(), d.coords.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      consider(geom::dist2_point_segment(pts[i].second, pts[j].second, pts[j].second));
  }
  for (const auto& e : d.edges) {
    auto s = segment(d, e);
    if (!s) continue;
    for (const auto& [id, p] : pts) {
      if (id != e.u && id != e.v) consider(geom::dist2_point_segment(p, s->first, s->second));
    }
  }
  auto infos = cluster_infos(c.hierarchy, c.graph);
  int max_depth = 0;
  std::vector<std::vector<Point>> hulls;
  for (const auto& info : infos) {
    max_depth = std::max(max_depth, info.depth);
    std::vector<Point> members;
    for (const auto& m : info.members) {
      auto it = d.coords.find(m);
      if (it != d.coords.end()) members.push_back(it->second);
    }
    hulls.push_back(geom::convex_hull(members));
    const auto& hull = hulls.back();
    if (hull.empty()) continue;
    for (const auto& [id, p] : pts) {
      if (!info.members.count(id)) consider(geom::dist2_polygons(hull, {p}));
    }
    for (const auto& e : d.edges) {
      auto s = segment(d, e);
      if (s) consider(geom::dist2_polygons(hull, {s->first, s->second}));
    }
  }
  for (std::size_t i = 0; i < hulls.size(); ++i) {
    for (std::size_t j = i + 1; j < hulls.size(); ++j) {
      if (!hulls[i].empty() && !hulls[j].empty()) consider(geom::dist2_polygons(hulls[i], hulls[j]));
    }
  }
  Rational delta = best ? geom::sqrt_floor_pow2(*best) : Rational(1);
  return delta / (8 * (max_depth + 1));
}

LevelDrawing build_cluster_regions(LevelDrawing d, const CLInstance& c, std::optional<Rational> epsilon) {
  auto infos = cluster_infos(c.hierarchy, c.graph);
  auto levels = level_map(c.graph);
  // Consecutiveness on every level, judged by x among the level's real vertices.
  for (const auto& info : infos) {
    std::map<int, std::vector<std::pair<Rational, bool>>> rows;
    for (const auto& [id, lv] : levels) {
      auto it = d.coords.find(id);
      if (it == d.coords.end()) throw PreconditionError("build_cluster_regions: vertex without coordinates: " + id);
      rows[lv].push_back({it->second.x, info.members.count(id) > 0});
    }
    for (auto& [lv, row] : rows) {
      std::sort(row.begin(), row.end());
      long first = -1, last = -1, count = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (!row[i].second) continue;
        if (first < 0) first = static_cast<long>(i);
        last = static_cast<long>(i);
        ++count;
      }
      if (count > 0 && last - first + 1 != count)
        throw PreconditionError("build_cluster_regions: cluster " + info.id + " not consecutive on level " +
                                std::to_string(lv));
    }
  }
  Rational eps = epsilon ? *epsilon : choose_epsilon(d, c);
  int max_depth = 0;
  for (const auto& info : infos) max_depth = std::max(max_depth, info.depth);
  d.regions.clear();
  d.region_depth.clear();
  for (const auto& info : infos) {
    std::vector<Point> members;
    for (const auto& m : info.members) members.push_back(d.coords.at(m));
    d.regions[info.id] = inflate(members, eps * (max_depth - info.depth + 1));
    d.region_depth[info.id] = info.depth;
  }
  return d;
}

DrawingReport validate_cl_drawing(const LevelDrawing& d, const CLInstance& c) {
  DrawingReport report;
  auto add = [&](const char* cond, std::string detail) { report.push_back({cond, std::move(detail)}); };

  // (0) placement and straight-line crossing freedom.
  for (const auto& v : c.graph.vertices) {
    auto it = d.coords.find(v.id);
    if (it == d.coords.end()) {
      add("0", "vertex " + v.id + " has no coordinates");
    } else if (it->second.y != v.level) {
      add("0", "vertex " + v.id + " not on line y=" + std::to_string(v.level));
    }
  }
  for (const auto& hit : segment_crossings(d)) add("0", "edges " + edge_name(hit.a) + " and " + edge_name(hit.b) + " cross");
  for (const auto& deg : degeneracies(d)) add("degeneracy", "vertex " + deg.vertex + " lies on edge " + edge_name(deg.edge));

  auto infos = cluster_infos(c.hierarchy, c.graph);
  std::set<std::string> real;
  for (const auto& v : c.graph.vertices) real.insert(v.id);

  // (1) each region is a convex polygon holding exactly its cluster's vertices.
  for (const auto& info : infos) {
    auto it = d.regions.find(info.id);
    if (it == d.regions.end()) {
      add("1", "cluster " + info.id + " has no region");
      continue;
    }
    const auto& poly = it->second;
    if (!geom::is_convex_ccw(poly)) {
      add("1", "region of " + info.id + " is not a convex counterclockwise polygon");
      continue;
    }
    for (const auto& id : real) {
      auto p = d.coords.find(id);
      if (p == d.coords.end()) continue;
      int where = geom::locate(p->second, poly);
      bool member = info.members.count(id) > 0;
      if (where == 0) {
        add("1", "vertex " + id + " on the boundary of " + info.id);
      } else if (member && where < 0) {
        add("1", "member " + id + " outside region " + info.id);
      } else if (!member && where > 0) {
        add("1", "non-member " + id + " inside region " + info.id);
      }
    }
  }

  // (2) every segment crosses every region boundary at most once.
  for (const auto& info : infos) {
    auto it = d.regions.find(info.id);
    if (it == d.regions.end() || !geom::is_convex_ccw(it->second)) continue;
    for (const auto& e : d.edges) {
      auto s = segment(d, e);
      if (!s) continue;
      auto in = geom::clip(s->first, s->second, it->second);
      if (!in) continue;
      int crossings = 0;
      if (in->first == in->second) {
        crossings = 1;
      } else {
        crossings = (in->first > 0 ? 1 : 0) + (in->second < 1 ? 1 : 0);
      }
      if (crossings > 1) add("2", "edge " + edge_name(e) + " crosses the boundary of " + info.id + " twice");
    }
  }

  // (3) region boundaries pairwise disjoint.
  std::vector<std::string> names;
  for (const auto& info : infos) {
    auto it = d.regions.find(info.id);
    if (it != d.regions.end() && geom::is_convex_ccw(it->second)) names.push_back(info.id);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const auto& p = d.regions.at(names[i]);
      const auto& q = d.regions.at(names[j]);
      bool touch = false;
      for (std::size_t a = 0; a < p.size() && !touch; ++a) {
        for (std::size_t b = 0; b < q.size() && !touch; ++b) {
          touch = geom::segments_intersect(p[a], p[(a + 1) % p.size()], q[b], q[(b + 1) % q.size()]);
        }
      }
      if (touch) add("3", "boundaries of " + names[i] + " and " + names[j] + " intersect");
    }
  }

  // (4) each region meets every level line in a segment holding exactly the
  // cluster's vertices of that level.
  auto levels = level_map(c.graph);
  for (const auto& info : infos) {
    auto it = d.regions.find(info.id);
    if (it == d.regions.end() || !geom::is_convex_ccw(it->second)) continue;
    Rational lo = it->second.front().x, hi = lo;
    for (const auto& p : it->second) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
    for (int l = 0; l < c.graph.levels; ++l) {
      Point a{lo - 1, Rational(l)}, b{hi + 1, Rational(l)};
      auto in = geom::clip(a, b, it->second);
      for (const auto& [id, lv] : levels) {
        if (lv != l) continue;
        auto p = d.coords.find(id);
        if (p == d.coords.end()) continue;
        bool inside = false;
        if (in) {
          Rational x0 = a.x + in->first * (b.x - a.x), x1 = a.x + in->second * (b.x - a.x);
          inside = x0 <= p->second.x && p->second.x <= x1 && p->second.y == l;
        }
        if (inside != (info.members.count(id) > 0))
          add("4", "line y=" + std::to_string(l) + " inside " + info.id + (inside ? " contains " : " misses ") + id +
                       " at " + point_name(p->second));
      }
    }
  }
  return report;
}

}  // namespace levelplan::drawing
