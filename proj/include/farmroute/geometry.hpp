#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace farmroute {

// Collinearity and containment tolerance, in distance units. Instances live
// at unit-square scale, so this sits far below any grid pitch.
inline constexpr double kGeomEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
  // Lexicographic (x, then y).
  friend constexpr auto operator<=>(Point a, Point b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
// Twice the signed area of triangle (o, a, b); positive when CCW.
constexpr double orient(Point o, Point a, Point b) { return cross(a - o, b - o); }
inline double norm(Point a) { return std::sqrt(dot(a, a)); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }
// Counter-clockwise quarter turn.
constexpr Point perp(Point a) { return {-a.y, a.x}; }
Point rotate(Point p, double radians);

// Strictly convex polygon, counter-clockwise, no duplicate vertices and no
// three consecutive vertices collinear.
class ConvexPolygon {
 public:
  // Validates the invariants but keeps the given vertex order.
  // Throws DegenerateInput on violation.
  static ConvexPolygon from_ccw(std::vector<Point> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  std::span<const Point> vertices() const noexcept { return vertices_; }
  double area() const;

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  explicit ConvexPolygon(std::vector<Point> v) : vertices_(std::move(v)) {}
  std::vector<Point> vertices_;
};

struct AntipodalPair {
  std::size_t i = 0;
  std::size_t j = 0;  // i < j

  friend constexpr auto operator<=>(const AntipodalPair&, const AntipodalPair&) = default;
};

struct Diameter {
  AntipodalPair pair;
  double length = 0.0;
};

// Andrew's monotone chain after exact-duplicate removal. Output starts at the
// lexicographically smallest vertex and runs counter-clockwise.
// Throws DegenerateInput for < 3 distinct points, all-collinear input, or
// non-finite coordinates.
ConvexPolygon convex_hull(std::span<const Point> points);

// True when `points` contain at least three distinct, non-collinear entries.
bool spans_area(std::span<const Point> points);

// Every vertex pair admitting parallel supporting lines, found with rotating
// calipers. Parallel edges contribute every extreme combination. Sorted by
// (i, j) and deduplicated.
std::vector<AntipodalPair> antipodal_pairs(const ConvexPolygon& poly);

// Farthest antipodal pair; ties go to the smallest (i, j).
Diameter diameter(const ConvexPolygon& poly);

// Inside or on the boundary, within kGeomEps.
bool contains(const ConvexPolygon& poly, Point p);

}  // namespace farmroute
