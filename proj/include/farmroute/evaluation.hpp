#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "farmroute/baseline.hpp"
#include "farmroute/instances.hpp"
#include "farmroute/solution.hpp"

namespace farmroute {

struct InstanceMetrics {
  std::string instance;
  std::string algorithm;
  double total_distance = 0.0;
  double max_route_length = 0.0;
  std::vector<double> route_lengths;
  double solve_time_s = 0.0;  // the solve call only
};

// Throws InvalidSolution unless `sol` splits every node of `inst` into exactly
// sol.k non-empty routes.
void validate(const FarmInstance& inst, const Solution& sol);

// Validates, then recomputes every route length from coordinates. Stored
// lengths in `sol` are ignored.
InstanceMetrics score(const FarmInstance& inst, const Solution& sol);

inline constexpr std::string_view kAlgorithms[] = {"hpp", "minmax-ls", "exact"};
bool is_known_algorithm(std::string_view name);

// Dispatches to hpp_solve / minmax_local_search / exact_minmax.
Solution solve(const FarmInstance& inst, std::string_view algorithm, std::size_t k,
               std::uint64_t seed, const SolverBudget& budget = {});

enum class RowMode { sequential, parallel, skipped };
std::string_view to_string(RowMode mode);

struct ReportRow {
  std::size_t size = 0;
  std::string algorithm;
  double mean_total = 0.0;
  double mean_max = 0.0;
  double batch_time_s = 0.0;  // sum of per-instance solve times, or wall time when parallel
  std::size_t instances = 0;
  RowMode mode = RowMode::sequential;
};

struct BenchmarkReport {
  std::vector<ReportRow> rows;
  std::vector<InstanceMetrics> per_instance;  // sequential pass only
};

struct BenchmarkOptions {
  std::vector<std::string> algorithms{"hpp"};
  std::size_t k = 5;
  std::uint64_t seed = 0;
  SolverBudget budget;
  std::size_t jobs = 1;
};

// Groups instances by node count (ascending) and solves every group with every
// algorithm. `exact` rows are marked skipped for groups beyond its limits.
// A solver failure aborts the run with the instance named.
BenchmarkReport run_benchmark(std::span<const FarmInstance> instances, const BenchmarkOptions& opts);
BenchmarkReport run_benchmark(const Manifest& manifest, const BenchmarkOptions& opts);

// header: size,algorithm,mean_total,mean_max,batch_time_s,instances,mode
std::string to_csv(const BenchmarkReport& report);
// Three aligned blocks (total, max, time) with algorithms as columns.
std::string to_table(const BenchmarkReport& report);

// Least-squares slope of log(y) against log(x).
double power_law_exponent(std::span<const double> x, std::span<const double> y);

}  // namespace farmroute
