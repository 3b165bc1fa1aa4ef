#pragma once

#include <optional>
#include <string>

#include "farmroute/instances.hpp"
#include "farmroute/solution.hpp"

namespace farmroute {

struct PlotOptions {
  int width = 900;
  int height = 900;
  bool route_hulls = false;  // outline the hull of every route's nodes
};

// Farm outline, nodes, depot marker and, when a solution is given, one
// depot-closed polyline per route from a fixed 10-colour palette. The solution
// is validated first (throws InvalidSolution).
std::string render_svg(const FarmInstance& inst, const std::optional<Solution>& sol,
                       const PlotOptions& opts = {});

}  // namespace farmroute
