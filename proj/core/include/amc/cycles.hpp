#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "amc/graph.hpp"

namespace amc {

/// A 3-clique u < v < w with its edges in the order (uv, vw, uw).
struct Triangle {
  std::array<EdgeId, 3> edges{};
  std::array<NodeId, 3> nodes{};

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

class TriangleSet {
 public:
  TriangleSet() = default;
  TriangleSet(std::vector<Triangle> triangles, std::size_t num_edges);

  std::span<const Triangle> triangles() const { return triangles_; }
  std::size_t size() const { return triangles_.size(); }
  std::size_t num_edges() const { return incident_.size(); }

  /// Indices of the triangles containing edge e, in ascending order.
  std::span<const std::uint32_t> incident(EdgeId e) const {
    return incident_[e];
  }

 private:
  std::vector<Triangle> triangles_;
  std::vector<std::vector<std::uint32_t>> incident_;
};

struct CycleStats {
  std::size_t total_cycles = 0;
  std::size_t invalid_relaxed = 0;
  std::size_t invalid_rounded = 0;

  friend bool operator==(const CycleStats&, const CycleStats&) = default;
};

enum class ViolationMode { relaxed, binary };

/// Every 3-clique exactly once, sorted by (u, v, w).
TriangleSet enumerate_triangles(const EdgeGraph& graph);

/// True iff some value strictly exceeds the sum of the other two.
/// Binary mode additionally requires every value to be exactly 0 or 1.
bool triangle_violated(std::array<double, 3> values,
                       ViolationMode mode = ViolationMode::relaxed);

/// Counts triangles violated on the raw marginals and after thresholding
/// (marginal >= threshold becomes a cut).
CycleStats count_invalid(std::span<const double> marginals,
                         const TriangleSet& triangles,
                         double rounding_threshold = 0.5);

inline constexpr std::size_t kMaxCycleEnumerationNodes = 12;

/// Every chordless cycle of length 3..max_length, once each, as edge lists in
/// traversal order starting at the smallest node and continuing towards its
/// smaller cycle neighbor. Exhaustive; guarded to small graphs.
std::vector<std::vector<EdgeId>> enumerate_chordless_cycles(
    const EdgeGraph& graph, std::size_t max_length);

/// True iff the labeling is a multicut: no cut edge joins two nodes of the
/// same join-connected component.
bool is_feasible(const EdgeGraph& graph, std::span<const std::uint8_t> labeling);

}  // namespace amc
