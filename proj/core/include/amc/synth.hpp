#pragma once

#include <cstddef>
#include <cstdint>

#include "amc/graph.hpp"

namespace amc {

/// Planted-partition grid instances: a Voronoi ground truth over the pixel
/// grid, and cut probabilities p_e = clamp(0.5 +/- margin + U(-noise, noise))
/// with the sign taken from the true edge label.
struct SynthOptions {
  std::size_t height = 32;
  std::size_t width = 32;
  std::size_t regions = 6;
  double noise = 0.3;
  double margin = 0.28;
  GridConfig grid{2, 4};
  std::uint64_t seed = 0;
};

struct SynthInstance {
  EdgeGraph graph;
  Labeling truth;
  Partition truth_partition;
};

SynthInstance make_planted_instance(const SynthOptions& options);

}  // namespace amc
