#pragma once

// Straight-line level drawings with exact rational coordinates, convex
// cluster regions, geometric validation and SVG output.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "levelplan/core.hpp"
#include "levelplan/oracles.hpp"

namespace levelplan {

using Rational = boost::multiprecision::cpp_rational;

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
};

struct LevelDrawing {
  int levels = 0;
  std::map<std::string, Point> coords;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<Point>> regions;  // counterclockwise convex polygons
  std::map<std::string, int> region_depth;

  friend bool operator==(const LevelDrawing&, const LevelDrawing&) = default;
};

namespace drawing {

/// Rank placement: x = 1-based position on the level, y = level.  o may cover
/// g itself or, for non-proper g, its subdivision (dummies are then drawn).
LevelDrawing draw_from_ordering(const LevelGraph& g, const LevelOrdering& o);

/// Per level, vertices sorted by x (ties by id).
LevelOrdering ordering_of(const LevelDrawing& d);

struct SegmentHit {
  Edge a;
  Edge b;
};

/// Pairs of edges without a shared endpoint whose segments intersect.
std::vector<SegmentHit> segment_crossings(const LevelDrawing& d);

struct Degeneracy {
  Edge edge;
  std::string vertex;
};

/// Vertices lying on the relative interior of a non-incident segment.
std::vector<Degeneracy> degeneracies(const LevelDrawing& d);

/// Drawing of the standard gadget instance for b from a satisfying order.
LevelDrawing draw_from_betweenness_solution(const BetweennessInstance& b, const std::vector<std::string>& order);

/// Largest admissible inflation unit for c's clusters in d (see the .cpp).
Rational choose_epsilon(const LevelDrawing& d, const CLInstance& c);

/// Regions R(mu) = hull(V_mu) inflated by an axis-parallel square of half
/// side epsilon * (max_depth - depth(mu) + 1).
LevelDrawing build_cluster_regions(LevelDrawing d, const CLInstance& c,
                                   std::optional<Rational> epsilon = std::nullopt);

struct DrawingViolation {
  std::string condition;  // "0".."4" or "degeneracy"
  std::string detail;
};
using DrawingReport = std::vector<DrawingViolation>;

DrawingReport validate_cl_drawing(const LevelDrawing& d, const CLInstance& c);

/// Rotation systems for reduce_tlp_to_sefe(t) realising the ordering o.
SefeWitness build_sefe_certificate(const TLevelInstance& t, const LevelOrdering& o);

struct SvgOptions {
  int scale = 60;
  int margin = 40;
  bool labels = true;
};

std::string emit_svg(const LevelDrawing& d, const SvgOptions& options = {});

/// Fixed six-decimal rendering, rounded half away from zero.
std::string decimal6(const Rational& r);

}  // namespace drawing
}  // namespace levelplan
