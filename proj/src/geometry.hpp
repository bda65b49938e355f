#pragma once

// Exact predicates over rational points.

#include <optional>
#include <utility>
#include <vector>

#include "levelplan/drawing.hpp"

namespace levelplan::geom {

int sign(const Rational& r);

/// >0 for a left turn a -> b -> c.
int orient(const Point& a, const Point& b, const Point& c);

/// p on the closed segment ab.
bool on_segment(const Point& p, const Point& a, const Point& b);

/// Closed segments ab and cd share a point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

Rational dist2_point_segment(const Point& p, const Point& a, const Point& b);

/// Squared distance between closed segments (0 when they meet).
Rational dist2_segments(const Point& a, const Point& b, const Point& c, const Point& d);

/// Counterclockwise hull without collinear points; fewer than 3 points for
/// degenerate input.
std::vector<Point> convex_hull(std::vector<Point> pts);

/// 1 inside, 0 on the boundary, -1 outside.  poly is counterclockwise convex.
int locate(const Point& p, const std::vector<Point>& poly);

/// Parameter interval [t0, t1] of segment ab inside the closed polygon.
std::optional<std::pair<Rational, Rational>> clip(const Point& a, const Point& b, const std::vector<Point>& poly);

/// Squared distance between two convex polygons, or between a polygon and a
/// segment (passed as a two-point polygon); 0 when they meet.
Rational dist2_polygons(const std::vector<Point>& p, const std::vector<Point>& q);

/// Largest 2^-j (j >= 0) whose square does not exceed d2 (> 0).
Rational sqrt_floor_pow2(const Rational& d2);

bool is_convex_ccw(const std::vector<Point>& poly);

}  // namespace levelplan::geom
