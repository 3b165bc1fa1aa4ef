#include <doctest.h>

#include <numbers>

#include "farmroute/baseline.hpp"
#include "farmroute/errors.hpp"
#include "farmroute/hpp.hpp"
#include "oracles.hpp"

using namespace farmroute;

namespace {

FarmInstance random_instance(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  auto pts = oracle::uniform_points(rng, n);
  return make_instance("r" + std::to_string(seed), {0.5, 0.0}, pts);
}

void check_feasible(const Solution& sol, std::size_t n, std::size_t k) {
  REQUIRE(sol.routes.size() == k);
  std::vector<int> seen(n, 0);
  for (const Route& r : sol.routes) {
    CHECK_FALSE(r.nodes.empty());
    for (const std::size_t v : r.nodes) ++seen.at(v);
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

}  // namespace

TEST_CASE("distance matrix is symmetric and Euclidean") {
  const FarmInstance inst = generate({.node_count = 40, .seed = 2});
  const DistanceMatrix d(inst);
  REQUIRE(d.size() == 41);
  CHECK(d.depot() == 40);
  for (std::size_t a = 0; a < d.size(); ++a) {
    CHECK(d(a, a) == 0.0);
    const Point pa = a == d.depot() ? inst.depot : inst.nodes[a];
    for (std::size_t b = 0; b < d.size(); ++b) {
      const Point pb = b == d.depot() ? inst.depot : inst.nodes[b];
      CHECK(std::abs(d(a, b) - d(b, a)) <= 1e-12);
      CHECK(d(a, b) == doctest::Approx(oracle::dist(pa, pb)));
      for (std::size_t c = 0; c < d.size(); c += 7) CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
    }
  }
}

TEST_CASE("minmax-ls with one route is a single tour") {
  const FarmInstance inst = generate({.node_count = 60, .seed = 4});
  const Solution sol = minmax_local_search(inst, 1, 0);
  check_feasible(sol, 60, 1);
  CHECK(sol.total_length() == doctest::Approx(sol.max_length()));
}

TEST_CASE("minmax-ls on 8 nodes around the depot is within 10% of optimal") {
  std::vector<Point> ring;
  for (int i = 0; i < 8; ++i) {
    const double a = i * std::numbers::pi / 4;
    ring.push_back({std::cos(a), std::sin(a)});
  }
  const FarmInstance inst = make_instance("ring", {0, 0}, ring);
  const Solution sol = minmax_local_search(inst, 2, 0);
  check_feasible(sol, 8, 2);
  CHECK(sol.max_length() <= 1.10 * oracle::min_max_brute(inst.depot, inst.nodes, 2));
}

TEST_CASE("square corners split into adjacent pairs") {
  const double h = std::numbers::sqrt2 / 2;  // unit half-diagonal
  const std::vector<Point> corners{{-h, -h}, {h, -h}, {h, h}, {-h, h}};
  const FarmInstance inst = make_instance("square", {0, 0}, corners);
  const double best = oracle::min_max_brute(inst.depot, inst.nodes, 2);
  CHECK(best == doctest::Approx(1.0 + std::numbers::sqrt2 + 1.0));

  for (const Solution& sol : {exact_minmax(inst, 2), minmax_local_search(inst, 2, 0)}) {
    check_feasible(sol, 4, 2);
    CHECK(sol.max_length() == doctest::Approx(best));
    for (const Route& r : sol.routes) {
      REQUIRE(r.nodes.size() == 2);
      CHECK(distance(inst.nodes[r.nodes[0]], inst.nodes[r.nodes[1]]) == doctest::Approx(std::numbers::sqrt2));
    }
  }
}

TEST_CASE("exact oracle small cases") {
  const FarmInstance two = make_instance("two", {0, 0}, std::vector<Point>{{1, 0}, {0, 3}});
  const Solution s2 = exact_minmax(two, 2);
  check_feasible(s2, 2, 2);
  CHECK(s2.max_length() == doctest::Approx(6.0));
  CHECK(s2.algorithm == "exact");

  const FarmInstance line = make_instance("line", {0, 0}, std::vector<Point>{{1, 0}, {2, 0}, {3, 0}});
  const Solution s3 = exact_minmax(line, 1);
  CHECK(s3.max_length() == doctest::Approx(6.0));
  // 1,3,2 and 2,3,1 tie at length 6; the lowest index sequence wins
  CHECK(s3.routes[0].nodes == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("exact oracle agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 3 + seed % 5;
    const std::size_t k = 1 + seed % 3;
    if (k > n) continue;
    const FarmInstance inst = random_instance(seed, n);
    const Solution sol = exact_minmax(inst, k);
    check_feasible(sol, n, k);
    CHECK(sol.max_length() == doctest::Approx(oracle::min_max_brute(inst.depot, inst.nodes, k)).epsilon(1e-12));
  }
}

TEST_CASE("exact oracle dominates the heuristics") {
  const FarmInstance inst = random_instance(3, 6);
  const double best = exact_minmax(inst, 2).max_length();
  CHECK(best <= minmax_local_search(inst, 2, 3).max_length() + 1e-9);
  CHECK(best <= hpp_solve(inst, 2, 3).max_length() + 1e-9);
}

TEST_CASE("minmax-ls output is 2-opt optimal and its trace never rises") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FarmInstance inst = generate({.node_count = 80 + 30 * seed, .seed = seed});
    const LocalSearchResult res = minmax_local_search_run(inst, 5, seed);
    check_feasible(res.solution, inst.size(), 5);
    for (std::size_t i = 1; i < res.max_trace.size(); ++i) CHECK(res.max_trace[i] < res.max_trace[i - 1]);
    CHECK(res.solution.max_length() == doctest::Approx(res.max_trace.back()));

    for (const Route& r : res.solution.routes) {
      std::vector<Point> seq{inst.depot};
      for (const std::size_t v : r.nodes) seq.push_back(inst.nodes[v]);
      seq.push_back(inst.depot);
      for (std::size_t i = 0; i + 3 < seq.size(); ++i) {
        for (std::size_t j = i + 2; j + 1 < seq.size(); ++j) {
          const double delta = oracle::dist(seq[i], seq[j]) + oracle::dist(seq[i + 1], seq[j + 1]) -
                               oracle::dist(seq[i], seq[i + 1]) - oracle::dist(seq[j], seq[j + 1]);
          CHECK(delta >= -1e-9);
        }
      }
    }
  }
}

TEST_CASE("minmax-ls is deterministic and respects its iteration budget") {
  const FarmInstance inst = generate({.node_count = 200, .seed = 8});
  CHECK(to_text(minmax_local_search(inst, 5, 1)) == to_text(minmax_local_search(inst, 5, 1)));
  const LocalSearchResult capped = minmax_local_search_run(inst, 5, 1, {.max_iterations = 2});
  CHECK(capped.iterations <= 2);
  check_feasible(capped.solution, inst.size(), 5);
  const LocalSearchResult timed = minmax_local_search_run(inst, 5, 1, {.max_iterations = std::nullopt, .time_limit_s = 5.0});
  check_feasible(timed.solution, inst.size(), 5);
}

TEST_CASE("solver errors") {
  const FarmInstance big = generate({.node_count = 11, .seed = 1});
  CHECK_THROWS_AS(exact_minmax(big, 2), TooLarge);
  const FarmInstance small = random_instance(1, 5);
  CHECK_THROWS_AS(exact_minmax(small, 4), TooLarge);
  CHECK_THROWS_AS(exact_minmax(small, 0), InvalidK);
  CHECK_THROWS_AS(minmax_local_search(small, 0, 0), InvalidK);
  CHECK_THROWS_AS(minmax_local_search(small, 6, 0), InvalidK);
  CHECK_FALSE(exact_applicable(11, 2));
  CHECK(exact_applicable(10, 3));
}
