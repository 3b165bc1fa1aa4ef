#include "farmroute/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "farmroute/errors.hpp"

namespace farmroute {

namespace {

constexpr double kImprove = 1e-10;
constexpr std::size_t kRelocateCandidates = 10;

void check_k(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) {
    throw InvalidK("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
}

std::vector<std::size_t> nearest_neighbour(std::vector<std::size_t> pool, const DistanceMatrix& dist) {
  std::sort(pool.begin(), pool.end());
  std::vector<std::size_t> route;
  route.reserve(pool.size());
  std::size_t at = dist.depot();
  while (!pool.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (dist(at, pool[i]) < dist(at, pool[pick])) pick = i;
    }
    at = pool[pick];
    route.push_back(at);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return route;
}

// Cheapest slot for `v` in depot -> route -> depot: (added length, position).
std::pair<double, std::size_t> cheapest_insertion(const std::vector<std::size_t>& route,
                                                  std::size_t v, const DistanceMatrix& dist) {
  const std::size_t dep = dist.depot();
  double best = std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  for (std::size_t p = 0; p <= route.size(); ++p) {
    const std::size_t a = p == 0 ? dep : route[p - 1];
    const std::size_t b = p == route.size() ? dep : route[p];
    const double add = dist(a, v) + dist(v, b) - dist(a, b);
    if (add < best) {
      best = add;
      pos = p;
    }
  }
  return {best, pos};
}

double removal_gain(const std::vector<std::size_t>& route, std::size_t p, const DistanceMatrix& dist) {
  const std::size_t dep = dist.depot();
  const std::size_t a = p == 0 ? dep : route[p - 1];
  const std::size_t b = p + 1 == route.size() ? dep : route[p + 1];
  return dist(a, route[p]) + dist(route[p], b) - dist(a, b);
}

}  // namespace

DistanceMatrix::DistanceMatrix(const FarmInstance& inst)
    : n_(inst.size() + 1), d_(n_ * n_, 0.0) {
  auto at = [&](std::size_t i) { return i + 1 == n_ ? inst.depot : inst.nodes[i]; };
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = distance(at(i), at(j));
      d_[i * n_ + j] = d;
      d_[j * n_ + i] = d;
    }
  }
}

double DistanceMatrix::tour(std::span<const std::size_t> route) const {
  if (route.empty()) return 0.0;
  double len = (*this)(depot(), route.front()) + (*this)(route.back(), depot());
  for (std::size_t i = 1; i < route.size(); ++i) len += (*this)(route[i - 1], route[i]);
  return len;
}

void two_opt(std::vector<std::size_t>& route, const DistanceMatrix& dist) {
  if (route.size() < 2) return;
  std::vector<std::size_t> seq;
  seq.reserve(route.size() + 2);
  seq.push_back(dist.depot());
  seq.insert(seq.end(), route.begin(), route.end());
  seq.push_back(dist.depot());
  const std::size_t m = seq.size();

  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i + 3 < m; ++i) {
      for (std::size_t j = i + 2; j + 1 < m; ++j) {
        const double delta = dist(seq[i], seq[j]) + dist(seq[i + 1], seq[j + 1]) -
                             dist(seq[i], seq[i + 1]) - dist(seq[j], seq[j + 1]);
        if (delta < -kImprove) {
          std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       seq.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
        }
      }
    }
  }
  std::copy(seq.begin() + 1, seq.end() - 1, route.begin());
}

LocalSearchResult minmax_local_search_run(const FarmInstance& inst, std::size_t k,
                                          std::uint64_t seed, const SolverBudget& budget) {
  const std::size_t n = inst.size();
  check_k(n, k);
  if (!budget.max_iterations && !budget.time_limit_s) {
    throw Error("solver budget needs an iteration or time bound");
  }
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const DistanceMatrix dist(inst);

  // Phase 1: sectors of near-equal size, sweeping counter-clockwise from node 0.
  const Point depot = inst.depot;
  const double base = std::atan2(inst.nodes[0].y - depot.y, inst.nodes[0].x - depot.x);
  std::vector<std::tuple<double, double, std::size_t>> polar(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point d = inst.nodes[i] - depot;
    double rel = std::atan2(d.y, d.x) - base;
    while (rel < 0.0) rel += 2.0 * std::numbers::pi;
    while (rel >= 2.0 * std::numbers::pi) rel -= 2.0 * std::numbers::pi;
    polar[i] = {i == 0 ? 0.0 : rel, norm(d), i};
  }
  std::sort(polar.begin(), polar.end());

  std::vector<std::vector<std::size_t>> routes(k);
  for (std::size_t r = 0, at = 0; r < k; ++r) {
    const std::size_t take = n / k + (r < n % k ? 1 : 0);
    for (std::size_t c = 0; c < take; ++c) routes[r].push_back(std::get<2>(polar[at++]));
  }

  // Phase 2
  std::vector<double> len(k);
  for (std::size_t r = 0; r < k; ++r) {
    routes[r] = nearest_neighbour(routes[r], dist);
    two_opt(routes[r], dist);
    len[r] = dist.tour(routes[r]);
  }

  LocalSearchResult result;
  result.max_trace.push_back(*std::max_element(len.begin(), len.end()));

  // Phase 3
  auto out_of_budget = [&] {
    if (budget.max_iterations && result.iterations >= *budget.max_iterations) return true;
    if (budget.time_limit_s) {
      const std::chrono::duration<double> el = Clock::now() - t0;
      if (el.count() >= *budget.time_limit_s) return true;
    }
    return false;
  };

  while (k > 1 && !out_of_budget()) {
    ++result.iterations;
    const auto longest =
        static_cast<std::size_t>(std::max_element(len.begin(), len.end()) - len.begin());
    const double current = len[longest];
    const auto& src = routes[longest];
    if (src.size() <= 1) break;

    std::vector<Point> centroid(k);
    for (std::size_t r = 0; r < k; ++r) {
      Point s{};
      for (const std::size_t v : routes[r]) s = s + inst.nodes[v];
      centroid[r] = (1.0 / static_cast<double>(routes[r].size())) * s;
    }
    std::vector<std::pair<double, std::size_t>> closeness;  // (distance, position in src)
    for (std::size_t p = 0; p < src.size(); ++p) {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < k; ++r) {
        if (r != longest) d = std::min(d, distance(inst.nodes[src[p]], centroid[r]));
      }
      closeness.emplace_back(d, p);
    }
    const std::size_t take = std::min(kRelocateCandidates, closeness.size());
    std::partial_sort(closeness.begin(), closeness.begin() + static_cast<std::ptrdiff_t>(take),
                      closeness.end());

    struct Move {
      double predicted;
      std::size_t node;
      std::size_t target;
      std::size_t pos;  // position in src
      std::size_t slot;
    };
    std::vector<Move> moves;
    for (std::size_t c = 0; c < take; ++c) {
      const std::size_t p = closeness[c].second;
      const double shrunk = current - removal_gain(src, p, dist);
      for (std::size_t r = 0; r < k; ++r) {
        if (r == longest) continue;
        const auto [add, slot] = cheapest_insertion(routes[r], src[p], dist);
        double worst = std::max(shrunk, len[r] + add);
        for (std::size_t o = 0; o < k; ++o) {
          if (o != r && o != longest) worst = std::max(worst, len[o]);
        }
        moves.push_back({worst, src[p], r, p, slot});
      }
    }
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
      return std::tie(a.predicted, a.node, a.target) < std::tie(b.predicted, b.node, b.target);
    });

    bool accepted = false;
    for (const Move& mv : moves) {
      std::vector<std::size_t> from = src;
      from.erase(from.begin() + static_cast<std::ptrdiff_t>(mv.pos));
      std::vector<std::size_t> into = routes[mv.target];
      into.insert(into.begin() + static_cast<std::ptrdiff_t>(mv.slot), mv.node);
      two_opt(from, dist);
      two_opt(into, dist);
      const double from_len = dist.tour(from);
      const double into_len = dist.tour(into);
      double worst = std::max(from_len, into_len);
      for (std::size_t o = 0; o < k; ++o) {
        if (o != mv.target && o != longest) worst = std::max(worst, len[o]);
      }
      if (worst < current - kImprove) {
        routes[longest] = std::move(from);
        routes[mv.target] = std::move(into);
        len[longest] = from_len;
        len[mv.target] = into_len;
        result.max_trace.push_back(worst);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  Solution& sol = result.solution;
  sol = {inst.name, "minmax-ls", k, seed, {}};
  for (auto& r : routes) {
    const double l = route_length(inst.nodes, inst.depot, r);
    sol.routes.push_back({std::move(r), l});
  }
  return result;
}

Solution minmax_local_search(const FarmInstance& inst, std::size_t k, std::uint64_t seed,
                             const SolverBudget& budget) {
  return minmax_local_search_run(inst, k, seed, budget).solution;
}

bool exact_applicable(std::size_t nodes, std::size_t k) {
  return nodes <= kExactMaxNodes && k <= kExactMaxRoutes;
}

Solution exact_minmax(const FarmInstance& inst, std::size_t k) {
  const std::size_t n = inst.size();
  if (!exact_applicable(n, k)) {
    throw TooLarge("exact solver handles at most " + std::to_string(kExactMaxNodes) +
                   " nodes and " + std::to_string(kExactMaxRoutes) + " routes (got " +
                   std::to_string(n) + " nodes, " + std::to_string(k) + " routes)");
  }
  check_k(n, k);
  const DistanceMatrix dist(inst);
  const std::size_t dep = dist.depot();
  const std::size_t full = std::size_t{1} << n;
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Held-Karp: path[mask][last] = shortest depot -> ... -> last through mask.
  std::vector<double> path(full * n, inf);
  for (std::size_t v = 0; v < n; ++v) path[(std::size_t{1} << v) * n + v] = dist(dep, v);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t last = 0; last < n; ++last) {
      const double here = path[mask * n + last];
      if (!(mask >> last & 1) || here == inf) continue;
      for (std::size_t nxt = 0; nxt < n; ++nxt) {
        if (mask >> nxt & 1) continue;
        const std::size_t m2 = mask | (std::size_t{1} << nxt);
        const double cand = here + dist(last, nxt);
        path[m2 * n + nxt] = std::min(path[m2 * n + nxt], cand);
      }
    }
  }
  std::vector<double> tour(full, inf);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t last = 0; last < n; ++last) {
      if (mask >> last & 1) tour[mask] = std::min(tour[mask], path[mask * n + last] + dist(last, dep));
    }
  }
  // Lexicographically smallest optimal order: take the lowest next node that
  // can still finish within the optimum. path[rest][v] read backwards is the
  // best v -> ... -> depot through rest.
  auto order_of = [&](std::size_t mask) {
    std::vector<std::size_t> order;
    const double target = tour[mask] + 1e-12 * std::max(1.0, tour[mask]);
    double walked = 0.0;
    std::size_t at = dep;
    for (std::size_t rest = mask; rest != 0;) {
      std::size_t pick = n;
      double pick_len = inf;
      for (std::size_t v = 0; v < n; ++v) {
        if (!(rest >> v & 1)) continue;
        const double len = walked + dist(at, v) + path[rest * n + v];
        if (len <= target) {
          pick = v;
          break;
        }
        if (len < pick_len) pick_len = len, pick = v;  // rounding fallback
      }
      order.push_back(pick);
      walked += dist(at, pick);
      at = pick;
      rest &= ~(std::size_t{1} << pick);
    }
    return order;
  };

  // Restricted-growth labelling enumerates each unordered split once.
  std::vector<std::size_t> label(n, 0);
  std::vector<std::vector<std::size_t>> best_routes;
  double best_max = inf;
  double best_total = inf;
  auto consider = [&] {
    std::vector<std::size_t> masks(k, 0);
    for (std::size_t v = 0; v < n; ++v) masks[label[v]] |= std::size_t{1} << v;
    double worst = 0.0;
    double total = 0.0;
    for (const std::size_t m : masks) {
      worst = std::max(worst, tour[m]);
      total += tour[m];
    }
    const double tol = 1e-12 * std::max(1.0, best_max);
    if (worst > best_max + tol) return;
    if (worst >= best_max - tol && total > best_total + tol) return;
    std::vector<std::vector<std::size_t>> routes;
    for (const std::size_t m : masks) routes.push_back(order_of(m));
    std::sort(routes.begin(), routes.end());
    if (worst >= best_max - tol && total >= best_total - tol && routes >= best_routes) return;
    best_max = worst;
    best_total = total;
    best_routes = std::move(routes);
  };
  auto recurse = [&](auto&& self, std::size_t v, std::size_t used) -> void {
    if (n - v < k - used) return;  // not enough nodes left to open the remaining routes
    if (v == n) {
      if (used == k) consider();
      return;
    }
    for (std::size_t c = 0; c <= std::min(used, k - 1); ++c) {
      label[v] = c;
      self(self, v + 1, std::max(used, c + 1));
    }
  };
  recurse(recurse, 0, 0);

  Solution sol{inst.name, "exact", k, 0, {}};
  for (auto& r : best_routes) {
    const double l = route_length(inst.nodes, inst.depot, r);
    sol.routes.push_back({std::move(r), l});
  }
  return sol;
}

}  // namespace farmroute
