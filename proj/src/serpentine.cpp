#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "farmroute/errors.hpp"
#include "farmroute/hpp.hpp"

namespace farmroute {

namespace {

struct Lane {
  std::vector<std::size_t> nodes;  // sorted along the sweep axis
  double internal = 0.0;

  std::size_t first(int dir) const { return dir == 0 ? nodes.front() : nodes.back(); }
  std::size_t last(int dir) const { return dir == 0 ? nodes.back() : nodes.front(); }
};

std::size_t index_of(std::span<const Point> pts, Point p) {
  const auto it = std::find(pts.begin(), pts.end(), p);
  if (it == pts.end()) throw DegenerateInput("hull vertex is not one of the cluster points");
  return static_cast<std::size_t>(it - pts.begin());
}

}  // namespace

SweepPath serpentine_route(std::span<const Point> pts, std::size_t start, std::size_t end,
                           Point axis, double spacing) {
  if (start == end) throw DegenerateInput("serpentine anchors must differ");
  if (!(spacing > 0.0)) throw DegenerateInput("lane spacing must be positive");
  const double len = norm(axis);
  if (!(len > 0.0)) throw DegenerateInput("sweep axis has zero length");
  const Point u = (1.0 / len) * axis;
  const Point v = perp(u);
  const Point p = pts[start];

  std::map<long, std::vector<std::pair<double, std::size_t>>> bins;
  long lo = 0;
  long hi = 0;
  long end_lane = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point d = pts[i] - p;
    const long lane = std::lround(dot(d, v) / spacing);
    lo = std::min(lo, lane);
    hi = std::max(hi, lane);
    if (i == end) end_lane = lane;
    if (i == start || i == end) continue;
    bins[lane].emplace_back(dot(d, u), i);
  }

  // Fly from the start anchor's side toward the end anchor's side. When both
  // anchors share a lane, start from whichever outer edge is nearer.
  const bool descending = end_lane < 0 || (end_lane == 0 && -lo > hi);
  std::vector<Lane> lanes;
  lanes.reserve(bins.size());
  for (auto& [lane, members] : bins) {
    std::sort(members.begin(), members.end());
    Lane l;
    for (const auto& [along, i] : members) l.nodes.push_back(i);
    l.internal = path_length(pts, l.nodes);
    lanes.push_back(std::move(l));
  }
  if (descending) std::reverse(lanes.begin(), lanes.end());

  SweepPath out;
  out.order.reserve(pts.size());
  out.order.push_back(start);
  if (!lanes.empty()) {
    // cost[l][dir]: shortest path from the start anchor through lanes 0..l
    // with lane l flown in direction dir (0 = along the axis).
    const std::size_t m = lanes.size();
    std::vector<std::array<double, 2>> cost(m);
    std::vector<std::array<int, 2>> from(m, {0, 0});
    for (int d = 0; d < 2; ++d) {
      cost[0][d] = distance(p, pts[lanes[0].first(d)]) + lanes[0].internal;
    }
    for (std::size_t l = 1; l < m; ++l) {
      for (int d = 0; d < 2; ++d) {
        const Point entry = pts[lanes[l].first(d)];
        const double via0 = cost[l - 1][0] + distance(pts[lanes[l - 1].last(0)], entry);
        const double via1 = cost[l - 1][1] + distance(pts[lanes[l - 1].last(1)], entry);
        from[l][d] = via1 < via0 ? 1 : 0;
        cost[l][d] = std::min(via0, via1) + lanes[l].internal;
      }
    }
    const double fin0 = cost[m - 1][0] + distance(pts[lanes[m - 1].last(0)], pts[end]);
    const double fin1 = cost[m - 1][1] + distance(pts[lanes[m - 1].last(1)], pts[end]);
    std::vector<int> dirs(m);
    dirs[m - 1] = fin1 < fin0 ? 1 : 0;
    for (std::size_t l = m - 1; l > 0; --l) dirs[l - 1] = from[l][dirs[l]];
    for (std::size_t l = 0; l < m; ++l) {
      if (dirs[l] == 0) {
        out.order.insert(out.order.end(), lanes[l].nodes.begin(), lanes[l].nodes.end());
      } else {
        out.order.insert(out.order.end(), lanes[l].nodes.rbegin(), lanes[l].nodes.rend());
      }
    }
  }
  out.order.push_back(end);
  out.internal_length = path_length(pts, out.order);
  return out;
}

std::vector<Point> sweep_axes(const ConvexPolygon& hull, Point start, Point end) {
  std::vector<Point> axes;
  auto add = [&axes](Point a) {
    const double len = norm(a);
    if (!(len > 0.0)) return;
    const Point unit = (1.0 / len) * a;
    for (const Point& b : axes) {
      if (std::abs(cross(unit, b)) <= 1e-12) return;
    }
    axes.push_back(unit);
  };
  add(end - start);
  for (std::size_t i = 0; i < hull.size(); ++i) add(hull.vertex(i + 1) - hull.vertex(i));
  return axes;
}

SweepPath serpentine_route(std::span<const Point> pts, const ConvexPolygon& hull,
                           AntipodalPair pair, Orientation orientation, double spacing) {
  std::size_t a = index_of(pts, hull[pair.i]);
  std::size_t b = index_of(pts, hull[pair.j]);
  if (orientation == Orientation::reverse) std::swap(a, b);
  SweepPath best;
  bool have = false;
  for (const Point& axis : sweep_axes(hull, pts[a], pts[b])) {
    SweepPath cand = serpentine_route(pts, a, b, axis, spacing);
    if (!have || cand.internal_length < best.internal_length) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

}  // namespace farmroute
