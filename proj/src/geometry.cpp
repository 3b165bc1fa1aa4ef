#include "farmroute/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "farmroute/errors.hpp"

namespace farmroute {

namespace {

// Left turn a -> b -> c by more than kGeomEps of perpendicular offset.
bool strict_left(Point a, Point b, Point c) {
  return orient(a, b, c) > kGeomEps * distance(a, c);
}

// Edge directions that agree to this relative precision are treated as
// parallel when merging caliper arcs.
constexpr double kParallelTol = 1e-12;

}  // namespace

Point rotate(Point p, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw DegenerateInput("convex polygon needs at least 3 vertices");
  for (const Point& p : vertices) {
    if (!is_finite(p)) throw DegenerateInput("non-finite polygon vertex");
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    const Point c = vertices[(i + 2) % n];
    if (a == b) throw DegenerateInput("duplicate polygon vertex " + std::to_string(i));
    if (!strict_left(a, b, c)) {
      throw DegenerateInput("polygon is not strictly convex at vertex " +
                            std::to_string((i + 1) % n));
    }
    turning += std::atan2(cross(b - a, c - b), dot(b - a, c - b));
  }
  // A star polygon turns left everywhere but winds more than once.
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw DegenerateInput("polygon winds more than once");
  }
  return ConvexPolygon(std::move(vertices));
}

double ConvexPolygon::area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < size(); ++i) twice += cross(vertex(i), vertex(i + 1));
  return 0.5 * twice;
}

ConvexPolygon convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  for (const Point& p : pts) {
    if (!is_finite(p)) throw DegenerateInput("non-finite coordinate");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateInput("fewer than 3 distinct points");

  std::vector<Point> hull;
  hull.reserve(2 * pts.size());
  auto push_chain = [&hull](Point p, std::size_t floor) {
    while (hull.size() >= floor + 2 &&
           !strict_left(hull[hull.size() - 2], hull.back(), p)) {
      hull.pop_back();
    }
    hull.push_back(p);
  };
  for (const Point& p : pts) push_chain(p, 0);
  const std::size_t lower = hull.size() - 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) push_chain(*it, lower);
  hull.pop_back();  // closes on pts.front()

  if (hull.size() < 3) throw DegenerateInput("all points are collinear");
  return ConvexPolygon::from_ccw(std::move(hull));
}

bool spans_area(std::span<const Point> points) {
  if (points.size() < 3) return false;
  const Point a = points.front();
  Point b = a;
  double far = 0.0;
  for (const Point& p : points) {
    if (const double d = distance(a, p); d > far) {
      far = d;
      b = p;
    }
  }
  if (far <= kGeomEps) return false;
  return std::any_of(points.begin(), points.end(), [&](Point p) {
    return std::abs(orient(a, b, p)) > kGeomEps * far;
  });
}

std::vector<AntipodalPair> antipodal_pairs(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  auto edge = [&](std::size_t i) { return poly.vertex(i + 1) - poly.vertex(i); };

  // Vertex a is extreme for supporting-line directions in the arc
  // [e(a-1), e(a)]; vertex b is extreme on the opposite side for the arc
  // [-e(b-1), -e(b)]. Pairs whose arcs overlap are antipodal. Walk both
  // arc sequences around the circle in step, like a pair of calipers.
  std::size_t b = 0;
  double best = -1.0;
  for (std::size_t v = 0; v < n; ++v) {
    const double h = orient(poly.vertex(n - 1), poly.vertex(0), poly.vertex(v));
    if (h > best) {
      best = h;
      b = v;
    }
  }

  std::vector<AntipodalPair> pairs;
  auto record = [&](std::size_t u, std::size_t w) {
    u %= n;
    w %= n;
    if (u == w) return;
    pairs.push_back(u < w ? AntipodalPair{u, w} : AntipodalPair{w, u});
  };

  std::size_t a = 0;
  // One full turn of `a` plus slack; extra steps only re-record valid pairs.
  for (std::size_t step = 0; step < 3 * n + 3; ++step) {
    record(a, b);
    const Point ea = edge(a % n);
    const Point eb = edge(b % n);
    const double c = cross(ea, Point{-eb.x, -eb.y});
    if (std::abs(c) <= kParallelTol * norm(ea) * norm(eb)) {
      record(a + 1, b);
      record(a, b + 1);
      ++a;
      ++b;
    } else if (c > 0) {
      ++a;
    } else {
      ++b;
    }
  }

  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

Diameter diameter(const ConvexPolygon& poly) {
  Diameter best{{0, 0}, -1.0};
  for (const AntipodalPair& p : antipodal_pairs(poly)) {
    const double d = distance(poly[p.i], poly[p.j]);
    // pairs arrive sorted, so only a strictly longer pair may replace
    if (d > best.length * (1.0 + 1e-12)) best = {p, d};
  }
  return best;
}

bool contains(const ConvexPolygon& poly, Point p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly.vertex(i);
    const Point b = poly.vertex(i + 1);
    if (orient(a, b, p) < -kGeomEps * distance(a, b)) return false;
  }
  return true;
}

}  // namespace farmroute
