#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "amc/cycles.hpp"
#include "amc/graph.hpp"

namespace amc {

struct SolveResult {
  Labeling labeling;
  Partition partition;
  double objective_linear = 0.0;
  double objective_cubic = 0.0;
  bool feasible = false;
};

/// Sum of c_e * y_e.
double objective_linear(const EdgeGraph& graph, std::span<const std::uint8_t> labeling);

/// Number of triangles with exactly one cut edge.
std::size_t count_invalid_triangles(const TriangleSet& triangles,
                                    std::span<const std::uint8_t> labeling);

/// objective_linear plus gamma per triangle with exactly one cut edge.
double objective_cubic(const EdgeGraph& graph, const TriangleSet& triangles,
                       std::span<const std::uint8_t> labeling, double gamma);

inline constexpr std::size_t kMaxExactNodes = 12;

/// Global minimum of the multicut objective by enumerating every node
/// partition as a restricted-growth string. Ties go to the lexicographically
/// smallest partition vector.
SolveResult solve_exact(const EdgeGraph& graph);

/// Thresholds the marginals (>= threshold is a cut) and restores
/// feasibility through the join-connected components.
SolveResult round_and_repair(std::span<const double> marginals, const EdgeGraph& graph,
                             double threshold = 0.5);

/// Greedy additive edge contraction. Falls back to the all-join labeling when
/// the contraction ends with a positive objective.
SolveResult greedy_contract(const EdgeGraph& graph);

}  // namespace amc
