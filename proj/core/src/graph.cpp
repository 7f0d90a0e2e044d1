#include "amc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "union_find.hpp"

namespace amc {

EdgeMap::EdgeMap(std::size_t height, std::size_t width,
                 std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  if (values_.size() != height_ * width_) {
    throw std::invalid_argument("edge map size does not match " +
                                std::to_string(height_) + "x" +
                                std::to_string(width_));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("edge map value outside [0,1]");
    }
  }
}

void GridConfig::validate() const {
  if (min_distance < 1 || min_distance > max_distance) {
    throw std::invalid_argument(
        "grid distances must satisfy 1 <= min_distance <= max_distance");
  }
}

EdgeGraph::EdgeGraph(std::size_t num_nodes, std::vector<Edge> edges,
                     std::vector<double> probs)
    : num_nodes_(num_nodes), edges_(std::move(edges)), probs_(std::move(probs)) {
  if (probs_.size() != edges_.size()) {
    throw std::invalid_argument("probability count does not match edge count");
  }
  validate_topology();
  costs_.reserve(probs_.size());
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("edge probability outside [0,1]");
    }
    costs_.push_back(probs_to_costs(p));
  }
}

EdgeGraph EdgeGraph::with_costs(std::size_t num_nodes, std::vector<Edge> edges,
                                std::vector<double> costs) {
  if (costs.size() != edges.size()) {
    throw std::invalid_argument("cost count does not match edge count");
  }
  EdgeGraph graph;
  graph.num_nodes_ = num_nodes;
  graph.edges_ = std::move(edges);
  graph.validate_topology();
  graph.probs_.reserve(costs.size());
  // Inverse logit, so probs stay meaningful for instances given by cost.
  for (double c : costs) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite edge cost");
    graph.probs_.push_back(1.0 / (1.0 + std::exp(c)));
  }
  graph.costs_ = std::move(costs);
  return graph;
}

EdgeGraph EdgeGraph::with_probs(std::vector<double> probs) const {
  return EdgeGraph(num_nodes_, edges_, std::move(probs));
}

void EdgeGraph::validate_topology() {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (Edge& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= num_nodes_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    const auto key = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) +
                                  ", " + std::to_string(e.v) + ")");
    }
  }
}

double probs_to_costs(double p) {
  const double clamped =
      std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  return std::log((1.0 - clamped) / clamped);
}

double icc_weight(const EdgeMap& map, Pixel i, Pixel j) {
  if (i.row >= map.height() || i.col >= map.width() ||
      j.row >= map.height() || j.col >= map.width()) {
    throw std::out_of_range("pixel outside edge map");
  }
  // Always rasterize from the lexicographically smaller pixel so the pixel
  // set is the same in both directions.
  if (std::tie(j.row, j.col) < std::tie(i.row, i.col)) std::swap(i, j);

  auto x = static_cast<long>(i.col);
  auto y = static_cast<long>(i.row);
  const auto x1 = static_cast<long>(j.col);
  const auto y1 = static_cast<long>(j.row);
  const long dx = std::labs(x1 - x);
  const long dy = -std::labs(y1 - y);
  const long sx = x < x1 ? 1 : -1;
  const long sy = y < y1 ? 1 : -1;
  long err = dx + dy;

  double best = map.at(static_cast<std::size_t>(y), static_cast<std::size_t>(x));
  while (x != x1 || y != y1) {
    const long e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
    best = std::max(best, map.at(static_cast<std::size_t>(y),
                                 static_cast<std::size_t>(x)));
  }
  return best;
}

EdgeGraph build_grid_graph(const EdgeMap& map, const GridConfig& config) {
  if (map.empty()) throw std::invalid_argument("empty edge map");
  config.validate();

  const auto height = static_cast<long>(map.height());
  const auto width = static_cast<long>(map.width());
  std::vector<Edge> edges;
  std::vector<double> probs;
  for (long r = 0; r < height; ++r) {
    for (long c = 0; c < width; ++c) {
      const Pixel source{static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
      for (const auto& [dr, dc] : kGridDirections) {
        for (std::size_t s = config.min_distance; s <= config.max_distance; ++s) {
          const long tr = r + dr * static_cast<long>(s);
          const long tc = c + dc * static_cast<long>(s);
          if (tr < 0 || tr >= height || tc < 0 || tc >= width) continue;
          const Pixel target{static_cast<std::size_t>(tr),
                             static_cast<std::size_t>(tc)};
          edges.push_back({pixel_id(map, source), pixel_id(map, target)});
          probs.push_back(icc_weight(map, source, target));
        }
      }
    }
  }
  return EdgeGraph(map.height() * map.width(), std::move(edges),
                   std::move(probs));
}

Partition partition_from_labeling(const EdgeGraph& graph,
                                  std::span<const std::uint8_t> labeling) {
  if (labeling.size() != graph.num_edges()) {
    throw std::invalid_argument("labeling length does not match edge count");
  }
  detail::UnionFind sets(graph.num_nodes());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (labeling[e] == 0) sets.unite(graph.edge(e).u, graph.edge(e).v);
  }
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> root_id(graph.num_nodes(), kUnassigned);
  Partition partition(graph.num_nodes());
  std::uint32_t next = 0;
  for (std::size_t n = 0; n < graph.num_nodes(); ++n) {
    auto& id = root_id[sets.find(n)];
    if (id == kUnassigned) id = next++;
    partition[n] = id;
  }
  return partition;
}

Labeling labeling_from_partition(const EdgeGraph& graph,
                                 std::span<const std::uint32_t> partition) {
  if (partition.size() != graph.num_nodes()) {
    throw std::invalid_argument("partition length does not match node count");
  }
  Labeling labeling(graph.num_edges());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    labeling[e] = partition[edge.u] != partition[edge.v] ? 1 : 0;
  }
  return labeling;
}

Partition canonical_partition(std::span<const std::uint32_t> partition) {
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  Partition out(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    auto [it, inserted] =
        remap.try_emplace(partition[i], static_cast<std::uint32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace amc
