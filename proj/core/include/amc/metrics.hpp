#pragma once

#include <cstdint>
#include <span>

namespace amc {

struct PartitionScore {
  double rand_index = 0.0;
  double variation_of_information = 0.0;
};

/// Fraction of node pairs on which two partitions agree (both together or
/// both apart). Component ids need not be dense. Requires at least two nodes.
double rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// H(a) + H(b) - 2 I(a; b), in nats.
double variation_of_information(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b);

PartitionScore score_partitions(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b);

struct EdgePrf {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

/// Precision/recall/F1 of the cut class. No predicted cuts gives precision 1;
/// no true cuts gives recall 1.
EdgePrf edge_prf(std::span<const std::uint8_t> predicted,
                 std::span<const std::uint8_t> truth);

}  // namespace amc
