#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "farmroute/geometry.hpp"

namespace farmroute {

// One drone's closed tour: depot -> nodes in order -> depot.
struct Route {
  std::vector<std::size_t> nodes;  // instance node indices, visit order
  double length = 0.0;             // including both depot legs

  std::size_t start_anchor() const { return nodes.front(); }
  std::size_t end_anchor() const { return nodes.back(); }
  friend bool operator==(const Route&, const Route&) = default;
};

struct Solution {
  std::string instance_ref;
  std::string algorithm;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<Route> routes;

  double total_length() const;
  double max_length() const;
  friend bool operator==(const Solution&, const Solution&) = default;
};

// depot -> order -> depot. An empty order has length 0.
double route_length(std::span<const Point> nodes, Point depot, std::span<const std::size_t> order);

// Sum of consecutive distances along `order`, no depot legs.
double path_length(std::span<const Point> pts, std::span<const std::size_t> order);

inline constexpr int kSolutionFormatVersion = 1;

// Stored lengths are advisory; evaluation recomputes them.
std::string to_text(const Solution& sol);
Solution parse_solution(const std::string& text);
void save(const Solution& sol, const std::filesystem::path& path);
Solution load_solution(const std::filesystem::path& path);

}  // namespace farmroute
