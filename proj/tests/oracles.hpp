#pragma once

// Brute-force references used only by tests. None of these call into the
// code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "farmroute/geometry.hpp"
#include "farmroute/rng.hpp"

namespace oracle {

using farmroute::Point;

inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Antipodal pairs by sampling supporting-line directions. For each of
// `directions` evenly spaced angles, every vertex that attains the maximum
// projection is paired with every vertex attaining the minimum.
inline std::set<std::pair<std::size_t, std::size_t>> antipodal_by_sweep(
    const std::vector<Point>& v, std::size_t directions = 1'000'000) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = v.size();
  std::vector<double> proj(n);
  double scale = 0.0;
  for (const Point& p : v) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t s = 0; s < directions; ++s) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(directions);
    const double c = std::cos(th), sn = std::sin(th);
    double hi = -std::numeric_limits<double>::infinity(), lo = -hi;
    for (std::size_t i = 0; i < n; ++i) {
      proj[i] = c * v[i].x + sn * v[i].y;
      hi = std::max(hi, proj[i]);
      lo = std::min(lo, proj[i]);
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (proj[a] < hi - tol) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (proj[b] > lo + tol || a == b) continue;
        out.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  return out;
}

// p lies in the closed triangle abc (degenerate triangles act as segments).
inline bool in_closed_triangle(Point p, Point a, Point b, Point c) {
  auto side = [](Point o, Point u, Point w) {
    return (u.x - o.x) * (w.y - o.y) - (u.y - o.y) * (w.x - o.x);
  };
  const double d1 = side(a, b, p), d2 = side(b, c, p), d3 = side(c, a, p);
  const double eps = 1e-12;
  const bool neg = d1 < -eps || d2 < -eps || d3 < -eps;
  const bool pos = d1 > eps || d2 > eps || d3 > eps;
  if (neg && pos) return false;
  // degenerate triangle: require p within the bounding box
  const double minx = std::min({a.x, b.x, c.x}) - eps, maxx = std::max({a.x, b.x, c.x}) + eps;
  const double miny = std::min({a.y, b.y, c.y}) - eps, maxy = std::max({a.y, b.y, c.y}) + eps;
  return p.x >= minx && p.x <= maxx && p.y >= miny && p.y <= maxy;
}

// Hull vertices = distinct points not covered by any triangle of the others.
inline std::set<std::pair<double, double>> hull_vertices_brute(const std::vector<Point>& pts) {
  std::set<std::pair<double, double>> out;
  const std::size_t n = pts.size();
  for (std::size_t p = 0; p < n; ++p) {
    bool covered = false;
    for (std::size_t a = 0; a < n && !covered; ++a) {
      if (a == p || pts[a] == pts[p]) continue;
      for (std::size_t b = a + 1; b < n && !covered; ++b) {
        if (b == p || pts[b] == pts[p]) continue;
        for (std::size_t c = b; c < n && !covered; ++c) {
          if (c == p || pts[c] == pts[p]) continue;
          covered = in_closed_triangle(pts[p], pts[a], pts[b], pts[c]);
        }
      }
    }
    if (!covered) out.insert({pts[p].x, pts[p].y});
  }
  return out;
}

// Shortest Hamiltonian path over pts with both endpoints fixed.
inline double min_fixed_endpoint_path(const std::vector<Point>& pts, std::size_t s, std::size_t t) {
  std::vector<std::size_t> mid;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i != s && i != t) mid.push_back(i);
  }
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    std::size_t at = s;
    for (const std::size_t v : mid) {
      len += dist(pts[at], pts[v]);
      at = v;
    }
    len += dist(pts[at], pts[t]);
    best = std::min(best, len);
  } while (std::next_permutation(mid.begin(), mid.end()));
  return best;
}

// Shortest closed tour depot -> all of `ids` -> depot.
inline double min_closed_tour(Point depot, const std::vector<Point>& nodes, std::vector<std::size_t> ids) {
  if (ids.empty()) return 0.0;
  std::sort(ids.begin(), ids.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = dist(depot, nodes[ids.front()]) + dist(nodes[ids.back()], depot);
    for (std::size_t i = 1; i < ids.size(); ++i) len += dist(nodes[ids[i - 1]], nodes[ids[i]]);
    best = std::min(best, len);
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

// Optimal min-max over every labelling of nodes with k non-empty routes.
inline double min_max_brute(Point depot, const std::vector<Point>& nodes, std::size_t k) {
  const std::size_t n = nodes.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= k;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<std::vector<std::size_t>> groups(k);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= k) groups[c % k].push_back(i);
    if (std::any_of(groups.begin(), groups.end(), [](auto& g) { return g.empty(); })) continue;
    double worst = 0.0;
    for (auto& g : groups) worst = std::max(worst, min_closed_tour(depot, nodes, g));
    best = std::min(best, worst);
  }
  return best;
}

// Area of the intersection of two CCW convex polygons (Sutherland-Hodgman).
inline double convex_intersection_area(std::vector<Point> subject, const std::vector<Point>& clip) {
  for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
    const Point a = clip[e], b = clip[(e + 1) % clip.size()];
    auto inside = [&](Point p) { return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= 0; };
    auto cut = [&](Point p, Point q) {
      const double d1 = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      const double d2 = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
      const double t = d1 / (d1 - d2);
      return Point{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    };
    std::vector<Point> next;
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const Point p = subject[i], q = subject[(i + 1) % subject.size()];
      if (inside(p)) {
        next.push_back(p);
        if (!inside(q)) next.push_back(cut(p, q));
      } else if (inside(q)) {
        next.push_back(cut(p, q));
      }
    }
    subject = std::move(next);
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < subject.size(); ++i) {
    const Point p = subject[i], q = subject[(i + 1) % subject.size()];
    twice += p.x * q.y - p.y * q.x;
  }
  return std::abs(0.5 * twice);
}

inline std::vector<Point> uniform_points(farmroute::Rng& rng, std::size_t n) {
  std::vector<Point> pts(n);
  for (Point& p : pts) p = {farmroute::uniform01(rng), farmroute::uniform01(rng)};
  return pts;
}

// Strictly convex polygon: points on a rotated ellipse at sorted random angles.
inline std::vector<Point> random_convex(farmroute::Rng& rng, std::size_t n) {
  std::vector<double> ang(n);
  for (double& a : ang) a = 2.0 * std::numbers::pi * farmroute::uniform01(rng);
  std::sort(ang.begin(), ang.end());
  const double rx = 0.5 + farmroute::uniform01(rng), ry = 0.2 + farmroute::uniform01(rng);
  const double tilt = farmroute::uniform01(rng) * 3.0;
  std::vector<Point> v;
  for (const double a : ang) v.push_back(farmroute::rotate({rx * std::cos(a), ry * std::sin(a)}, tilt));
  return v;
}

}  // namespace oracle
