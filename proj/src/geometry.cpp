#include "geometry.hpp"

#include <algorithm>

namespace levelplan::geom {

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int orient(const Point& a, const Point& b, const Point& c) {
  return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

Rational dist2_point_segment(const Point& p, const Point& a, const Point& b) {
  Rational dx = b.x - a.x, dy = b.y - a.y;
  Rational len2 = dx * dx + dy * dy;
  Rational t = 0;
  if (len2 != 0) {
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, Rational(0), Rational(1));
  }
  Rational qx = a.x + t * dx - p.x, qy = a.y + t * dy - p.y;
  return qx * qx + qy * qy;
}

Rational dist2_segments(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (segments_intersect(a, b, c, d)) return 0;
  return std::min({dist2_point_segment(a, c, d), dist2_point_segment(b, c, d), dist2_point_segment(c, a, b),
                   dist2_point_segment(d, a, b)});
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    // All points collinear: keep the two extremes.
    return {pts.front(), pts.back()};
  }
  return hull;
}

int locate(const Point& p, const std::vector<Point>& poly) {
  bool boundary = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    int o = orient(poly[i], poly[(i + 1) % poly.size()], p);
    if (o < 0) return -1;
    if (o == 0) boundary = true;
  }
  return boundary ? 0 : 1;
}

std::optional<std::pair<Rational, Rational>> clip(const Point& a, const Point& b, const std::vector<Point>& poly) {
  Rational t0 = 0, t1 = 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    // Inside half-plane: cross(q - p, x - p) >= 0, linear in t.
    Rational ex = q.x - p.x, ey = q.y - p.y;
    Rational f0 = ex * (a.y - p.y) - ey * (a.x - p.x);
    Rational f1 = ex * (b.y - p.y) - ey * (b.x - p.x);
    Rational df = f1 - f0;
    if (df == 0) {
      if (f0 < 0) return std::nullopt;
      continue;
    }
    Rational t = -f0 / df;
    if (df > 0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(t0, t1);
}

namespace {

std::vector<std::pair<Point, Point>> sides(const std::vector<Point>& p) {
  std::vector<std::pair<Point, Point>> out;
  if (p.size() == 1) {
    out.push_back({p[0], p[0]});
  } else if (p.size() == 2) {
    out.push_back({p[0], p[1]});
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back({p[i], p[(i + 1) % p.size()]});
  }
  return out;
}

}  // namespace

Rational dist2_polygons(const std::vector<Point>& p, const std::vector<Point>& q) {
  if (p.size() >= 3) {
    for (const auto& x : q) {
      if (locate(x, p) >= 0) return 0;
    }
  }
  if (q.size() >= 3) {
    for (const auto& x : p) {
      if (locate(x, q) >= 0) return 0;
    }
  }
  std::optional<Rational> best;
  for (const auto& [a, b] : sides(p)) {
    for (const auto& [c, d] : sides(q)) {
      Rational d2 = dist2_segments(a, b, c, d);
      if (!best || d2 < *best) best = d2;
    }
  }
  return best.value_or(Rational(0));
}

Rational sqrt_floor_pow2(const Rational& d2) {
  Rational r = 1;
  while (r * r > d2) r /= 2;
  return r;
}

bool is_convex_ccw(const std::vector<Point>& poly) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (orient(poly[i], poly[(i + 1) % poly.size()], poly[(i + 2) % poly.size()]) <= 0) return false;
  }
  return true;
}

}  // namespace levelplan::geom
