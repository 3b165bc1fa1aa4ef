#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>

#include "farmroute/errors.hpp"
#include "farmroute/evaluation.hpp"
#include "farmroute/instances.hpp"
#include "farmroute/svg.hpp"

namespace farmroute::cli {

namespace {

struct GenerateArgs {
  std::vector<std::size_t> sizes;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string algorithm = "hpp";
  std::size_t routes = 5;
  std::string instance;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 1000;
  std::optional<double> time_limit;
};

struct BenchArgs {
  std::string manifest;
  std::vector<std::string> algorithms{"hpp"};
  std::size_t routes = 5;
  std::uint64_t seed = 0;
  std::string report;
  std::string table;
  std::size_t jobs = 1;
  std::size_t max_iterations = 1000;
};

struct PlotArgs {
  std::string instance;
  std::string solution;
  bool clusters = false;
  std::string out;
  int width = 900;
  int height = 900;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path);
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const Manifest m = generate_dataset(a.sizes, a.count, a.seed, a.out);
  out << m.location.string() << '\n';
  return 0;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const FarmInstance inst = load(a.instance);
  SolverBudget budget{a.max_iterations, a.time_limit};
  const auto t0 = std::chrono::steady_clock::now();
  const Solution sol = solve(inst, a.algorithm, a.routes, a.seed, budget);
  const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
  const InstanceMetrics m = score(inst, sol);
  if (!a.out.empty()) save(sol, a.out);
  out << fmt::format("{} total={:.6f} max={:.6f} time={:.6g}\n", a.algorithm, m.total_distance,
                     m.max_route_length, el.count());
  return 0;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const Manifest manifest = load_manifest(a.manifest);
  BenchmarkOptions opts;
  opts.algorithms = a.algorithms;
  opts.k = a.routes;
  opts.seed = a.seed;
  opts.budget.max_iterations = a.max_iterations;
  opts.jobs = a.jobs;
  const BenchmarkReport report = run_benchmark(manifest, opts);
  write_file(a.report, to_csv(report));
  const std::string table = to_table(report);
  if (a.table.empty()) {
    out << table;
  } else {
    write_file(a.table, table);
  }
  return 0;
}

int cmd_plot(const PlotArgs& a) {
  const FarmInstance inst = load(a.instance);
  std::optional<Solution> sol;
  if (!a.solution.empty()) sol = load_solution(a.solution);
  PlotOptions opts{a.width, a.height, a.clusters};
  const std::string svg = render_svg(inst, sol, opts);
  write_file(a.out, svg);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverage route planning for grid-structured pond farms", "farmroute"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic instance dataset");
  g->add_option("--sizes", gen.sizes, "Node counts, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
  g->add_option("--count", gen.count, "Instances per size")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Base seed; instance i uses seed + i");
  g->add_option("--out", gen.out, "Output directory")->required();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("--algorithm", sol.algorithm)->check(CLI::IsMember({"hpp", "minmax-ls", "exact"}));
  s->add_option("--routes", sol.routes, "Number of routes (drones)")->check(CLI::PositiveNumber);
  s->add_option("--instance", sol.instance)->required();
  s->add_option("--out", sol.out, "Solution file to write");
  s->add_option("--seed", sol.seed);
  s->add_option("--max-iterations", sol.max_iterations, "minmax-ls relocate iterations")
      ->check(CLI::PositiveNumber);
  s->add_option("--time-limit", sol.time_limit, "minmax-ls time limit in seconds")
      ->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Benchmark solvers over a manifest");
  b->add_option("--manifest", bench.manifest)->required();
  b->add_option("--algorithms", bench.algorithms)
      ->delimiter(',')
      ->check(CLI::IsMember({"hpp", "minmax-ls", "exact"}));
  b->add_option("--routes", bench.routes)->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed);
  b->add_option("--report", bench.report, "CSV report path")->required();
  b->add_option("--table", bench.table, "Text table path (default: stdout)");
  b->add_option("--jobs", bench.jobs, "Parallel solver threads")->check(CLI::PositiveNumber);
  b->add_option("--max-iterations", bench.max_iterations)->check(CLI::PositiveNumber);

  PlotArgs plot;
  auto* p = app.add_subcommand("plot", "Render an instance and optional solution as SVG");
  p->add_option("--instance", plot.instance)->required();
  p->add_option("--solution", plot.solution);
  p->add_flag("--clusters", plot.clusters, "Outline each route's hull");
  p->add_option("--out", plot.out)->required();
  p->add_option("--width", plot.width)->check(CLI::PositiveNumber);
  p->add_option("--height", plot.height)->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (s->parsed()) return cmd_solve(sol, out);
    if (b->parsed()) return cmd_bench(bench, out);
    if (p->parsed()) return cmd_plot(plot);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace farmroute::cli
