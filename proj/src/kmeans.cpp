#include <algorithm>
#include <limits>
#include <string>

#include "farmroute/errors.hpp"
#include "farmroute/hpp.hpp"
#include "farmroute/rng.hpp"

namespace farmroute {

namespace {

double sq_dist(Point a, Point b) { return dot(a - b, a - b); }

std::size_t nearest(Point p, std::span<const Point> centroids) {
  std::size_t best = 0;
  double best_d = sq_dist(p, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    if (const double d = sq_dist(p, centroids[c]); d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<Point> seed_plus_plus(std::span<const Point> nodes, std::size_t k, Rng& rng) {
  std::vector<Point> centroids;
  centroids.reserve(k);
  centroids.push_back(nodes[uniform_below(rng, nodes.size())]);
  std::vector<double> d2(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) d2[i] = sq_dist(nodes[i], centroids[0]);

  while (centroids.size() < k) {
    double total = 0.0;
    for (const double d : d2) total += d;
    std::size_t pick = 0;
    if (total <= 0.0) {
      pick = uniform_below(rng, nodes.size());
    } else {
      const double r = uniform01(rng) * total;
      double acc = 0.0;
      pick = nodes.size() - 1;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        acc += d2[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
    }
    centroids.push_back(nodes[pick]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      d2[i] = std::min(d2[i], sq_dist(nodes[i], centroids.back()));
    }
  }
  return centroids;
}

Point mean_of(std::span<const Point> nodes, std::span<const std::size_t> members) {
  Point s{};
  for (const std::size_t i : members) s = s + nodes[i];
  return (1.0 / static_cast<double>(members.size())) * s;
}

}  // namespace

std::vector<std::vector<std::size_t>> ClusterAssignment::members() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
  return out;
}

namespace {

ClusterAssignment lloyd(std::span<const Point> nodes, std::size_t k, Rng& rng) {
  std::vector<Point> centroids = seed_plus_plus(nodes, k, rng);
  std::vector<std::size_t> labels(nodes.size());

  auto assign = [&] {
    for (std::size_t i = 0; i < nodes.size(); ++i) labels[i] = nearest(nodes[i], centroids);
  };

  bool converged = false;
  for (int it = 0; it < kKmeansMaxIterations && !converged; ++it) {
    assign();
    std::vector<Point> sums(k);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sums[labels[i]] = sums[labels[i]] + nodes[i];
      ++counts[labels[i]];
    }
    std::vector<Point> next(k);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) next[c] = (1.0 / static_cast<double>(counts[c])) * sums[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      // reseed at the point worst served by the current centroids
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t o = 0; o < k; ++o) {
          if (o != c && counts[o] != 0) d = std::min(d, sq_dist(nodes[i], next[o]));
        }
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      next[c] = nodes[far];
      counts[c] = 1;  // keeps later reseeds from treating it as empty
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < k; ++c) moved = std::max(moved, distance(next[c], centroids[c]));
    if (moved < kKmeansTolerance) {
      converged = true;
    } else {
      centroids = std::move(next);
    }
  }
  if (!converged) assign();
  return {k, std::move(labels), std::move(centroids)};
}

double inertia(std::span<const Point> nodes, const ClusterAssignment& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += sq_dist(nodes[i], a.centroids[a.labels[i]]);
  return s;
}

}  // namespace

ClusterAssignment kmeans(std::span<const Point> nodes, std::size_t k, std::uint64_t seed) {
  if (k == 0 || nodes.size() < k) throw InvalidK("k-means needs 1 <= k <= node count");
  Rng rng(seed);
  ClusterAssignment best = lloyd(nodes, k, rng);
  double best_sse = inertia(nodes, best);
  for (int run = 1; run < kKmeansRestarts; ++run) {
    ClusterAssignment cand = lloyd(nodes, k, rng);
    if (const double sse = inertia(nodes, cand); sse < best_sse) {
      best = std::move(cand);
      best_sse = sse;
    }
  }
  return best;
}

bool cluster_is_valid(std::span<const Point> nodes, std::span<const std::size_t> members) {
  if (members.size() < 3) return false;
  std::vector<Point> pts;
  pts.reserve(members.size());
  for (const std::size_t i : members) pts.push_back(nodes[i]);
  return spans_area(pts);
}

ClusterAssignment repair_clusters(ClusterAssignment assign, std::span<const Point> nodes) {
  const std::size_t k = assign.k;
  if (nodes.size() < 3 * k) {
    throw RepairImpossible("need at least " + std::to_string(3 * k) + " nodes for " +
                           std::to_string(k) + " routes, have " + std::to_string(nodes.size()));
  }
  auto groups = assign.members();
  auto centroid = [&](std::size_t c) {
    return groups[c].empty() ? assign.centroids[c] : mean_of(nodes, groups[c]);
  };

  const std::size_t max_moves = 4 * nodes.size() + 16;
  for (std::size_t moves = 0;; ++moves) {
    std::size_t bad = k;
    for (std::size_t c = 0; c < k; ++c) {
      if (!cluster_is_valid(nodes, groups[c])) {
        bad = c;
        break;
      }
    }
    if (bad == k) break;
    if (moves == max_moves) throw RepairImpossible("cluster repair did not settle");

    const Point target = centroid(bad);
    std::size_t best_node = nodes.size();
    std::size_t best_donor = k;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < k; ++d) {
      if (d == bad || groups[d].size() <= 3) continue;
      for (const std::size_t i : groups[d]) {
        const double dist2 = sq_dist(nodes[i], target);
        if (dist2 >= best_d) continue;
        std::vector<std::size_t> rest;
        rest.reserve(groups[d].size() - 1);
        for (const std::size_t j : groups[d]) {
          if (j != i) rest.push_back(j);
        }
        if (!cluster_is_valid(nodes, rest)) continue;
        best_d = dist2;
        best_node = i;
        best_donor = d;
      }
    }
    if (best_donor == k) {
      // nobody can give without breaking; the largest cluster gives anyway
      std::size_t largest = bad == 0 ? 1 : 0;
      for (std::size_t d = 0; d < k; ++d) {
        if (d != bad && groups[d].size() > groups[largest].size()) largest = d;
      }
      best_donor = largest;
      for (const std::size_t i : groups[largest]) {
        if (const double dist2 = sq_dist(nodes[i], target); dist2 < best_d) {
          best_d = dist2;
          best_node = i;
        }
      }
    }
    auto& from = groups[best_donor];
    from.erase(std::find(from.begin(), from.end(), best_node));
    auto& into = groups[bad];
    into.insert(std::upper_bound(into.begin(), into.end(), best_node), best_node);
    assign.labels[best_node] = bad;
  }

  for (std::size_t c = 0; c < k; ++c) assign.centroids[c] = mean_of(nodes, groups[c]);
  return assign;
}

double estimate_spacing(std::span<const Point> nodes) {
  if (nodes.size() < 2) throw DegenerateInput("spacing estimate needs at least 2 nodes");
  std::vector<double> nn(nodes.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double d = distance(nodes[i], nodes[j]);
      nn[i] = std::min(nn[i], d);
      nn[j] = std::min(nn[j], d);
    }
  }
  std::sort(nn.begin(), nn.end());
  const std::size_t m = nn.size() / 2;
  return nn.size() % 2 == 1 ? nn[m] : 0.5 * (nn[m - 1] + nn[m]);
}

}  // namespace farmroute
