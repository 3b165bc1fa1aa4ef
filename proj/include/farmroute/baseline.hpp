#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "farmroute/instances.hpp"
#include "farmroute/solution.hpp"

namespace farmroute {

// Euclidean distances among the nodes, with the depot appended at index n.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const FarmInstance& inst);

  std::size_t size() const noexcept { return n_; }  // node count + 1
  std::size_t depot() const noexcept { return n_ - 1; }
  double operator()(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }

  // depot -> route -> depot
  double tour(std::span<const std::size_t> route) const;

 private:
  std::size_t n_;
  std::vector<double> d_;
};

struct SolverBudget {
  std::optional<std::size_t> max_iterations = 1000;
  std::optional<double> time_limit_s;
};

// Removes improving 2-opt moves from depot -> route -> depot, endpoints fixed.
void two_opt(std::vector<std::size_t>& route, const DistanceMatrix& dist);

struct LocalSearchResult {
  Solution solution;
  // Longest route length after construction and after each accepted relocate.
  std::vector<double> max_trace;
  std::size_t iterations = 0;
};

// Reference min-max solver: angular sectors around the depot, nearest
// neighbour + 2-opt per route, then relocations out of the longest route while
// the longest route strictly shrinks. Throws InvalidK.
LocalSearchResult minmax_local_search_run(const FarmInstance& inst, std::size_t k,
                                          std::uint64_t seed, const SolverBudget& budget = {});
Solution minmax_local_search(const FarmInstance& inst, std::size_t k, std::uint64_t seed,
                             const SolverBudget& budget = {});

inline constexpr std::size_t kExactMaxNodes = 10;
inline constexpr std::size_t kExactMaxRoutes = 3;

bool exact_applicable(std::size_t nodes, std::size_t k);

// Optimal min-max solution by enumerating every split into k non-empty routes,
// each route an optimal closed tour. Ties: total length, then route content.
// Throws TooLarge above the node/route limits, InvalidK for k == 0 or k > n.
Solution exact_minmax(const FarmInstance& inst, std::size_t k);

}  // namespace farmroute
