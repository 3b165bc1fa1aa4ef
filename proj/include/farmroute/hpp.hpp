#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "farmroute/geometry.hpp"
#include "farmroute/instances.hpp"
#include "farmroute/solution.hpp"

namespace farmroute {

// Cluster-then-route coverage planner: k-means splits the farm into k areas,
// each area is flown as a back-and-forth sweep anchored at an antipodal
// vertex pair of its hull, and both ends are joined to the depot.

struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> labels;  // per node, in [0, k)
  std::vector<Point> centroids;

  // Node indices of every cluster, ascending.
  std::vector<std::vector<std::size_t>> members() const;
  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

inline constexpr int kKmeansMaxIterations = 100;
inline constexpr double kKmeansTolerance = 1e-9;
// independent k-means++ starts; the lowest within-cluster SSE wins
inline constexpr int kKmeansRestarts = 10;

// Lloyd's iteration from k-means++ seeding. Labels are nearest-centroid with
// respect to the returned centroids (ties to the lower index). A cluster that
// empties mid-run is reseeded at the point farthest from its nearest centroid.
ClusterAssignment kmeans(std::span<const Point> nodes, std::size_t k, std::uint64_t seed);

// At least three members that are not all collinear.
bool cluster_is_valid(std::span<const Point> nodes, std::span<const std::size_t> members);

// Grows invalid clusters one node at a time, always taking the node nearest
// the invalid cluster's centroid from a donor that stays valid with at least
// 3 members. When no such donor exists, the largest cluster donates.
// Centroids of the result are member means.
// Throws RepairImpossible when nodes.size() < 3k or the loop does not settle.
ClusterAssignment repair_clusters(ClusterAssignment assign, std::span<const Point> nodes);

// Median nearest-neighbour distance; the lane pitch for instances that do not
// record their lattice spacing.
double estimate_spacing(std::span<const Point> nodes);

enum class Orientation { forward, reverse };

struct SweepPath {
  std::vector<std::size_t> order;  // indices into the point span
  double internal_length = 0.0;    // no depot legs
};

// Back-and-forth path over `pts` from pts[start] to pts[end]. Points are
// binned into lanes parallel to `axis` with pitch `spacing`; lanes are flown
// in order from the start anchor's side to the end anchor's side, each lane
// straight along the axis, with the direction of every lane picked by a small
// dynamic program so lane-to-lane hops are as short as possible. The anchors
// are pinned to the two ends.
SweepPath serpentine_route(std::span<const Point> pts, std::size_t start, std::size_t end,
                           Point axis, double spacing);

// Candidate lane axes for an anchor pair: the anchor axis itself plus every
// hull edge direction, parallel duplicates removed.
std::vector<Point> sweep_axes(const ConvexPolygon& hull, Point start, Point end);

// Shortest serpentine over sweep_axes() for one antipodal pair of `hull`.
// Hull vertices must appear in `pts`.
SweepPath serpentine_route(std::span<const Point> pts, const ConvexPolygon& hull,
                           AntipodalPair pair, Orientation orientation, double spacing);

// Best depot-closed serpentine over every antipodal pair and orientation.
// Ties go to the smallest (pair.i, pair.j, orientation).
Route route_cluster(std::span<const Point> nodes, std::span<const std::size_t> members,
                    Point depot, double spacing);

struct HppTrace {
  ClusterAssignment clustered;  // straight from k-means
  ClusterAssignment repaired;
};

// Throws InvalidK for k == 0 or k > node count, RepairImpossible when fewer
// than 3k nodes are available.
Solution hpp_solve(const FarmInstance& inst, std::size_t k, std::uint64_t seed,
                   HppTrace* trace = nullptr);

}  // namespace farmroute
