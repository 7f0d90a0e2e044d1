#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "amc/graph.hpp"
#include "amc/meanfield.hpp"

namespace amc::io {

/// Malformed or unreadable input. The message carries the line number when
/// one is known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain (P2) or binary (P5) graymap with maxval 255; value / 255 is the
/// probability.
EdgeMap read_pgm(std::istream& in);
/// Rows of comma-separated probabilities; every row has the same width.
EdgeMap read_edge_map_csv(std::istream& in);
/// Picks PGM when the file starts with "P2"/"P5", CSV otherwise.
EdgeMap read_edge_map(const std::filesystem::path& path);

void write_pgm(std::ostream& out, const EdgeMap& map, bool binary = true);
void write_edge_map_csv(std::ostream& out, const EdgeMap& map);

inline constexpr int kProbabilityDigits = 9;

/// "nodes <n> edges <m>" followed by m lines "u v p"; costs are recomputed.
EdgeGraph read_graph(std::istream& in);
EdgeGraph read_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const EdgeGraph& graph);
void write_graph(const std::filesystem::path& path, const EdgeGraph& graph);

/// CSV "node,component" with a header row.
Partition read_partition(std::istream& in);
Partition read_partition(const std::filesystem::path& path);
void write_partition(std::ostream& out, std::span<const std::uint32_t> partition);

/// CSV "edge,u,v,cut" with a header row.
Labeling read_labeling(std::istream& in, const EdgeGraph& graph);
void write_labeling(std::ostream& out, const EdgeGraph& graph,
                    std::span<const std::uint8_t> labeling);

/// "key = value" lines for gamma_jjj, gamma_jcc, gamma_ccc, gamma_max and
/// unary_weight. Missing keys keep their defaults; '#' starts a comment.
PotentialParams read_params(std::istream& in);
void write_params(std::ostream& out, const PotentialParams& params);

std::string read_file(const std::filesystem::path& path);

}  // namespace amc::io
