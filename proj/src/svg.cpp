#include "farmroute/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>

#include "farmroute/errors.hpp"
#include "farmroute/evaluation.hpp"

namespace farmroute {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// Maps farm coordinates into the viewport with a uniform scale, y up.
struct Viewport {
  double scale = 1.0;
  double ox = 0.0, oy = 0.0;
  Point lo;

  Point map(Point p) const { return {ox + (p.x - lo.x) * scale, oy - (p.y - lo.y) * scale}; }
};

std::string points_attr(const Viewport& vp, const std::vector<Point>& pts) {
  std::string s;
  for (const Point& p : pts) {
    const Point q = vp.map(p);
    if (!s.empty()) s += ' ';
    s += fmt::format("{:.2f},{:.2f}", q.x, q.y);
  }
  return s;
}

}  // namespace

std::string render_svg(const FarmInstance& inst, const std::optional<Solution>& sol,
                       const PlotOptions& opts) {
  if (sol) validate(inst, *sol);
  if (opts.width <= 0 || opts.height <= 0) throw Error("plot size must be positive");

  std::vector<Point> all(inst.polygon.vertices().begin(), inst.polygon.vertices().end());
  all.insert(all.end(), inst.nodes.begin(), inst.nodes.end());
  all.push_back(inst.depot);
  Point lo = all.front(), hi = all.front();
  for (const Point& p : all) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double w = opts.width, h = opts.height;
  const double margin = 0.05 * std::min(w, h);
  const double span_x = std::max(hi.x - lo.x, 1e-12);
  const double span_y = std::max(hi.y - lo.y, 1e-12);
  Viewport vp;
  vp.scale = std::min((w - 2 * margin) / span_x, (h - 2 * margin) / span_y);
  vp.lo = lo;
  vp.ox = 0.5 * (w - span_x * vp.scale);
  vp.oy = h - 0.5 * (h - span_y * vp.scale);

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      opts.width, opts.height);

  std::vector<Point> outline(inst.polygon.vertices().begin(), inst.polygon.vertices().end());
  out += fmt::format(
      "<polygon class=\"farm\" points=\"{}\" fill=\"none\" stroke=\"#3060c0\" stroke-width=\"2\"/>\n",
      points_attr(vp, outline));

  if (sol) {
    for (std::size_t r = 0; r < sol->routes.size(); ++r) {
      const char* colour = kPalette[r % kPalette.size()];
      const auto& route = sol->routes[r].nodes;
      if (opts.route_hulls) {
        std::vector<Point> pts;
        for (const std::size_t v : route) pts.push_back(inst.nodes[v]);
        if (spans_area(pts)) {
          const ConvexPolygon hull = convex_hull(pts);
          std::vector<Point> hv(hull.vertices().begin(), hull.vertices().end());
          out += fmt::format(
              "<polygon class=\"cluster\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.12\" "
              "stroke=\"{}\" stroke-dasharray=\"4 3\"/>\n",
              points_attr(vp, hv), colour, colour);
        }
      }
      std::vector<Point> line{inst.depot};
      for (const std::size_t v : route) line.push_back(inst.nodes[v]);
      line.push_back(inst.depot);
      out += fmt::format(
          "<polyline class=\"route\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
          "stroke-width=\"1.5\"/>\n",
          points_attr(vp, line), colour);
    }
  }

  for (const Point& p : inst.nodes) {
    const Point q = vp.map(p);
    out += fmt::format("<circle class=\"node\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"black\"/>\n",
                       q.x, q.y);
  }
  const Point d = vp.map(inst.depot);
  out += fmt::format(
      "<rect class=\"depot\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" fill=\"#3060c0\"/>\n",
      std::clamp(d.x - 5, 0.0, w - 10), std::clamp(d.y - 5, 0.0, h - 10));
  out += "</svg>\n";
  return out;
}

}  // namespace farmroute
