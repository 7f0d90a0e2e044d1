#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace amc {

using NodeId = std::uint32_t;
using EdgeId = std::size_t;

/// Per-edge binary labels, 1 = cut, 0 = join.
using Labeling = std::vector<std::uint8_t>;

/// Per-node component id, dense and 0-based.
using Partition = std::vector<std::uint32_t>;

/// Per-edge relaxed cut probability Q(y_e = 1).
using EdgeMarginals = std::vector<double>;

inline constexpr double kProbabilityEpsilon = 1e-6;

/// Row-major grid of edge strengths in [0,1].
class EdgeMap {
 public:
  EdgeMap() = default;
  EdgeMap(std::size_t height, std::size_t width, std::vector<double> values);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  bool empty() const { return values_.empty(); }
  std::span<const double> values() const { return values_; }

  double at(std::size_t row, std::size_t col) const {
    return values_[row * width_ + col];
  }

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> values_;
};

struct Pixel {
  std::size_t row = 0;
  std::size_t col = 0;
};

struct GridConfig {
  std::size_t min_distance = 2;
  std::size_t max_distance = 8;

  void validate() const;
};

/// The four undirected 8-connectivity directions as (drow, dcol): E, SE, S, SW.
inline constexpr std::array<std::array<int, 2>, 4> kGridDirections{{
    {0, 1}, {1, 1}, {1, 0}, {1, -1}}};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A multicut instance: undirected simple graph with per-edge cut
/// probabilities and the signed costs derived from them.
class EdgeGraph {
 public:
  EdgeGraph() = default;

  /// Validates the edge list (normalizing each edge to u < v) and derives
  /// costs from probabilities. Throws std::invalid_argument on self-loops,
  /// duplicate edges, out-of-range endpoints or probabilities outside [0,1].
  EdgeGraph(std::size_t num_nodes, std::vector<Edge> edges,
            std::vector<double> probs);

  /// Same as above with explicitly supplied costs (no logit mapping).
  static EdgeGraph with_costs(std::size_t num_nodes, std::vector<Edge> edges,
                              std::vector<double> costs);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> probs() const { return probs_; }
  std::span<const double> costs() const { return costs_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  /// Copy of this graph with probabilities (and hence costs) replaced.
  EdgeGraph with_probs(std::vector<double> probs) const;

 private:
  void validate_topology();

  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> probs_;
  std::vector<double> costs_;
};

inline NodeId pixel_id(const EdgeMap& map, Pixel p) {
  return static_cast<NodeId>(p.row * map.width() + p.col);
}

/// log((1-p)/p) with p clamped to [eps, 1-eps]. Positive costs favor joining.
double probs_to_costs(double p);

/// Intervening contour cue: maximum edge strength along the rasterized line
/// between two pixels, both endpoints included.
double icc_weight(const EdgeMap& map, Pixel i, Pixel j);

/// One node per pixel and an edge for every in-image pixel pair offset by
/// s * d for each direction d and distance s in the configured range.
/// Edge order: source pixel (row-major), then direction, then distance.
EdgeGraph build_grid_graph(const EdgeMap& map, const GridConfig& config);

/// Connected components of the join subgraph. Component ids are assigned in
/// order of each component's lowest node id.
Partition partition_from_labeling(const EdgeGraph& graph,
                                  std::span<const std::uint8_t> labeling);

/// y_e = 1 iff the endpoints lie in different components.
Labeling labeling_from_partition(const EdgeGraph& graph,
                                 std::span<const std::uint32_t> partition);

/// Relabels arbitrary component ids to the dense first-occurrence form.
Partition canonical_partition(std::span<const std::uint32_t> partition);

}  // namespace amc
