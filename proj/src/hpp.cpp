#include "farmroute/hpp.hpp"

#include <string>

#include "farmroute/errors.hpp"

namespace farmroute {

Route route_cluster(std::span<const Point> nodes, std::span<const std::size_t> members,
                    Point depot, double spacing) {
  std::vector<Point> pts;
  pts.reserve(members.size());
  for (const std::size_t i : members) pts.push_back(nodes[i]);
  const ConvexPolygon hull = convex_hull(pts);

  SweepPath best;
  double best_score = 0.0;
  bool have = false;
  for (const AntipodalPair& pair : antipodal_pairs(hull)) {
    for (const Orientation o : {Orientation::forward, Orientation::reverse}) {
      SweepPath cand = serpentine_route(pts, hull, pair, o, spacing);
      const double score = distance(depot, pts[cand.order.front()]) + cand.internal_length +
                           distance(pts[cand.order.back()], depot);
      if (!have || score < best_score) {
        best = std::move(cand);
        best_score = score;
        have = true;
      }
    }
  }

  Route route;
  route.nodes.reserve(best.order.size());
  for (const std::size_t local : best.order) route.nodes.push_back(members[local]);
  route.length = route_length(nodes, depot, route.nodes);
  return route;
}

Solution hpp_solve(const FarmInstance& inst, std::size_t k, std::uint64_t seed, HppTrace* trace) {
  const std::size_t n = inst.size();
  if (k == 0 || k > n) {
    throw InvalidK("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  if (n < 3 * k) {
    throw RepairImpossible(std::to_string(n) + " nodes cannot give " + std::to_string(k) +
                           " clusters 3 nodes each");
  }

  ClusterAssignment clustered = kmeans(inst.nodes, k, seed);
  ClusterAssignment repaired = repair_clusters(clustered, inst.nodes);
  const double spacing = inst.spacing > 0.0 ? inst.spacing : estimate_spacing(inst.nodes);

  Solution sol{inst.name, "hpp", k, seed, {}};
  for (const auto& members : repaired.members()) {
    sol.routes.push_back(route_cluster(inst.nodes, members, inst.depot, spacing));
  }
  if (trace != nullptr) *trace = {std::move(clustered), std::move(repaired)};
  return sol;
}

}  // namespace farmroute
