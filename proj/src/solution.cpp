#include "farmroute/solution.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "farmroute/errors.hpp"
#include "text_io.hpp"

namespace farmroute {

double Solution::total_length() const {
  double t = 0.0;
  for (const Route& r : routes) t += r.length;
  return t;
}

double Solution::max_length() const {
  double m = 0.0;
  for (const Route& r : routes) m = std::max(m, r.length);
  return m;
}

double route_length(std::span<const Point> nodes, Point depot, std::span<const std::size_t> order) {
  if (order.empty()) return 0.0;
  double len = distance(depot, nodes[order.front()]) + distance(nodes[order.back()], depot);
  for (std::size_t i = 1; i < order.size(); ++i) {
    len += distance(nodes[order[i - 1]], nodes[order[i]]);
  }
  return len;
}

double path_length(std::span<const Point> pts, std::span<const std::size_t> order) {
  double len = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) len += distance(pts[order[i - 1]], pts[order[i]]);
  return len;
}

std::string to_text(const Solution& sol) {
  std::string out = fmt::format("version {}\n", kSolutionFormatVersion);
  out += "instance " + sol.instance_ref + "\n";
  out += "algorithm " + sol.algorithm + "\n";
  out += fmt::format("k {}\nseed {}\n", sol.k, sol.seed);
  for (const Route& r : sol.routes) {
    out += fmt::format("route {:.17g} {}", r.length, r.nodes.size());
    for (const std::size_t v : r.nodes) out += fmt::format(" {}", v);
    out += '\n';
  }
  out += fmt::format("total {:.17g}\nmax {:.17g}\n", sol.total_length(), sol.max_length());
  return out;
}

Solution parse_solution(const std::string& text) {
  detail::LineReader in(text);
  Solution sol;

  auto v = in.keyed("version");
  in.arity(v, 1, "version");
  if (const int version = in.integer<int>(v[0], "version"); version != kSolutionFormatVersion) {
    throw VersionError(fmt::format("unsupported solution format version {}", version));
  }
  auto inst = in.keyed("instance");
  in.arity(inst, 1, "instance");
  sol.instance_ref = inst[0];
  auto alg = in.keyed("algorithm");
  in.arity(alg, 1, "algorithm");
  sol.algorithm = alg[0];
  auto k = in.keyed("k");
  in.arity(k, 1, "k");
  sol.k = in.integer<std::size_t>(k[0], "k");
  auto seed = in.keyed("seed");
  in.arity(seed, 1, "seed");
  sol.seed = in.integer<std::uint64_t>(seed[0], "seed");

  for (std::size_t r = 0; r < sol.k; ++r) {
    const std::string field = "route " + std::to_string(r);
    auto t = in.keyed("route");
    if (t.size() < 2) in.fail(field, "expected length and node count");
    Route route;
    route.length = in.real(t[0], field);
    const auto count = in.integer<std::size_t>(t[1], field);
    in.arity(t, count + 2, field);
    for (std::size_t i = 0; i < count; ++i) {
      route.nodes.push_back(in.integer<std::size_t>(t[i + 2], field));
    }
    sol.routes.push_back(std::move(route));
  }
  // Summary lines are informational; only their shape is checked.
  auto total = in.keyed("total");
  in.arity(total, 1, "total");
  in.real(total[0], "total");
  auto max = in.keyed("max");
  in.arity(max, 1, "max");
  in.real(max[0], "max");
  return sol;
}

void save(const Solution& sol, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << to_text(sol);
}

Solution load_solution(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_solution(ss.str());
}

}  // namespace farmroute
