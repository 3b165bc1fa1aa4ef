#include "farmroute/evaluation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "farmroute/errors.hpp"
#include "farmroute/hpp.hpp"

namespace farmroute {

void validate(const FarmInstance& inst, const Solution& sol) {
  if (!sol.instance_ref.empty() && sol.instance_ref != inst.name) {
    throw InvalidSolution("solution is for instance '" + sol.instance_ref + "', not '" +
                          inst.name + "'");
  }
  if (sol.k == 0 || sol.routes.size() != sol.k) {
    throw InvalidSolution(fmt::format("expected k={} routes, found {}", sol.k, sol.routes.size()));
  }
  std::vector<int> seen(inst.size(), -1);
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    if (sol.routes[r].nodes.empty()) throw InvalidSolution(fmt::format("route {} is empty", r));
    for (const std::size_t v : sol.routes[r].nodes) {
      if (v >= inst.size()) {
        throw InvalidSolution(fmt::format("route {} visits node {} of a {}-node instance", r, v,
                                          inst.size()));
      }
      if (seen[v] >= 0) {
        throw InvalidSolution(
            fmt::format("node {} appears in route {} and route {}", v, seen[v], r));
      }
      seen[v] = static_cast<int>(r);
    }
  }
  if (const auto it = std::find(seen.begin(), seen.end(), -1); it != seen.end()) {
    throw InvalidSolution(fmt::format("node {} is not visited", it - seen.begin()));
  }
}

InstanceMetrics score(const FarmInstance& inst, const Solution& sol) {
  validate(inst, sol);
  InstanceMetrics m;
  m.instance = inst.name;
  m.algorithm = sol.algorithm;
  for (const Route& r : sol.routes) {
    const double len = route_length(inst.nodes, inst.depot, r.nodes);
    m.route_lengths.push_back(len);
    m.total_distance += len;
    m.max_route_length = std::max(m.max_route_length, len);
  }
  return m;
}

bool is_known_algorithm(std::string_view name) {
  return std::find(std::begin(kAlgorithms), std::end(kAlgorithms), name) != std::end(kAlgorithms);
}

Solution solve(const FarmInstance& inst, std::string_view algorithm, std::size_t k,
               std::uint64_t seed, const SolverBudget& budget) {
  if (algorithm == "hpp") return hpp_solve(inst, k, seed);
  if (algorithm == "minmax-ls") return minmax_local_search(inst, k, seed, budget);
  if (algorithm == "exact") return exact_minmax(inst, k);
  throw Error("unknown algorithm '" + std::string(algorithm) + "'");
}

std::string_view to_string(RowMode mode) {
  switch (mode) {
    case RowMode::sequential: return "sequential";
    case RowMode::parallel: return "parallel";
    case RowMode::skipped: return "skipped";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

InstanceMetrics timed_solve(const FarmInstance& inst, const std::string& alg,
                            const BenchmarkOptions& opts) {
  try {
    const auto t0 = Clock::now();
    Solution sol = solve(inst, alg, opts.k, opts.seed, opts.budget);
    const std::chrono::duration<double> el = Clock::now() - t0;
    InstanceMetrics m = score(inst, sol);
    m.solve_time_s = el.count();
    return m;
  } catch (const Error& e) {
    throw Error(fmt::format("{} on instance '{}': {}", alg, inst.name, e.what()));
  }
}

ReportRow aggregate(std::size_t size, const std::string& alg,
                    const std::vector<InstanceMetrics>& ms, RowMode mode) {
  ReportRow row{size, alg, 0.0, 0.0, 0.0, ms.size(), mode};
  for (const InstanceMetrics& m : ms) {
    row.mean_total += m.total_distance;
    row.mean_max += m.max_route_length;
    row.batch_time_s += m.solve_time_s;
  }
  row.mean_total /= static_cast<double>(ms.size());
  row.mean_max /= static_cast<double>(ms.size());
  return row;
}

}  // namespace

BenchmarkReport run_benchmark(std::span<const FarmInstance> instances, const BenchmarkOptions& opts) {
  for (const std::string& alg : opts.algorithms) {
    if (!is_known_algorithm(alg)) throw Error("unknown algorithm '" + alg + "'");
  }
  std::map<std::size_t, std::vector<const FarmInstance*>> groups;
  for (const FarmInstance& inst : instances) groups[inst.size()].push_back(&inst);

  BenchmarkReport report;
  for (const auto& [size, group] : groups) {
    for (const std::string& alg : opts.algorithms) {
      const bool skip = alg == "exact" && std::any_of(group.begin(), group.end(), [&](auto* g) {
                          return !exact_applicable(g->size(), opts.k);
                        });
      if (skip) {
        report.rows.push_back({size, alg, 0.0, 0.0, 0.0, group.size(), RowMode::skipped});
        continue;
      }
      if (opts.jobs > 1) {
        std::vector<InstanceMetrics> ms(group.size());
        std::vector<std::string> errors(group.size());
        std::atomic<std::size_t> next{0};
        const auto t0 = Clock::now();
        {
          std::vector<std::jthread> pool;
          for (std::size_t w = 0; w < std::min(opts.jobs, group.size()); ++w) {
            pool.emplace_back([&] {
              for (std::size_t i; (i = next++) < group.size();) {
                try {
                  ms[i] = timed_solve(*group[i], alg, opts);
                } catch (const Error& e) {
                  errors[i] = e.what();
                }
              }
            });
          }
        }
        const std::chrono::duration<double> wall = Clock::now() - t0;
        for (const std::string& e : errors) {
          if (!e.empty()) throw Error(e);
        }
        ReportRow row = aggregate(size, alg, ms, RowMode::parallel);
        row.batch_time_s = wall.count();
        report.rows.push_back(row);
      }
      // The sequential pass supplies the headline batch time.
      std::vector<InstanceMetrics> ms;
      ms.reserve(group.size());
      for (const FarmInstance* inst : group) ms.push_back(timed_solve(*inst, alg, opts));
      report.rows.push_back(aggregate(size, alg, ms, RowMode::sequential));
      report.per_instance.insert(report.per_instance.end(), ms.begin(), ms.end());
    }
  }
  return report;
}

BenchmarkReport run_benchmark(const Manifest& manifest, const BenchmarkOptions& opts) {
  std::vector<FarmInstance> instances;
  instances.reserve(manifest.entries.size());
  for (const ManifestEntry& e : manifest.entries) {
    const auto path = manifest.resolve(e);
    FarmInstance inst = load(path);
    if (inst.size() != e.size) {
      throw Error(fmt::format("{}: manifest says {} nodes, file has {}", path.string(), e.size,
                              inst.size()));
    }
    instances.push_back(std::move(inst));
  }
  return run_benchmark(instances, opts);
}

std::string to_csv(const BenchmarkReport& report) {
  std::string out = "size,algorithm,mean_total,mean_max,batch_time_s,instances,mode\n";
  for (const ReportRow& r : report.rows) {
    if (r.mode == RowMode::skipped) {
      out += fmt::format("{},{},,,,{},{}\n", r.size, r.algorithm, r.instances, to_string(r.mode));
    } else {
      out += fmt::format("{},{},{:.17g},{:.17g},{:.17g},{},{}\n", r.size, r.algorithm,
                         r.mean_total, r.mean_max, r.batch_time_s, r.instances,
                         to_string(r.mode));
    }
  }
  return out;
}

std::string to_table(const BenchmarkReport& report) {
  std::vector<std::string> algs;
  std::vector<std::size_t> sizes;
  std::map<std::pair<std::size_t, std::string>, const ReportRow*> cell;
  std::size_t count = 0;
  bool uniform = true;
  for (const ReportRow& r : report.rows) {
    if (r.mode == RowMode::parallel) continue;
    if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end()) algs.push_back(r.algorithm);
    if (std::find(sizes.begin(), sizes.end(), r.size) == sizes.end()) sizes.push_back(r.size);
    cell[{r.size, r.algorithm}] = &r;
    if (count != 0 && count != r.instances) uniform = false;
    count = r.instances;
  }

  std::size_t width = 12;
  for (const std::string& a : algs) width = std::max(width, a.size() + 2);

  std::string out;
  auto block = [&](const std::string& title, auto&& value) {
    out += title + "\n";
    out += fmt::format("{:<8}", "Ponds");
    for (const std::string& a : algs) out += fmt::format("{:>{}}", a, width);
    out += "\n";
    for (const std::size_t s : sizes) {
      out += fmt::format("{:<8}", s);
      for (const std::string& a : algs) {
        const auto it = cell.find({s, a});
        const bool missing = it == cell.end() || it->second->mode == RowMode::skipped;
        out += fmt::format("{:>{}}", missing ? std::string("---") : value(*it->second), width);
      }
      out += "\n";
    }
  };
  block("Average Total Distance", [](const ReportRow& r) { return fmt::format("{:.2f}", r.mean_total); });
  block("Average Maximum Route Length",
        [](const ReportRow& r) { return fmt::format("{:.2f}", r.mean_max); });
  block(uniform ? fmt::format("Run time for {} instances (s)", count) : "Run time per batch (s)",
        [](const ReportRow& r) { return fmt::format("{:.2E}", r.batch_time_s); });
  out += "# times cover the solve call only; instance loading is excluded\n";
  return out;
}

double power_law_exponent(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double nn = static_cast<double>(n);
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace farmroute
