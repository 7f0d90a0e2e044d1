#include "amc/solvers.hpp"

#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace amc {

double objective_linear(const EdgeGraph& graph, std::span<const std::uint8_t> labeling) {
  if (labeling.size() != graph.num_edges()) {
    throw std::invalid_argument("labeling length does not match edge count");
  }
  const auto costs = graph.costs();
  double total = 0.0;
  for (EdgeId e = 0; e < labeling.size(); ++e) {
    if (labeling[e] != 0) total += costs[e];
  }
  return total;
}

std::size_t count_invalid_triangles(const TriangleSet& triangles,
                                    std::span<const std::uint8_t> labeling) {
  if (labeling.size() != triangles.num_edges()) {
    throw std::invalid_argument("labeling length does not match edge count");
  }
  std::size_t invalid = 0;
  for (const Triangle& t : triangles.triangles()) {
    const int cuts = (labeling[t.edges[0]] != 0) + (labeling[t.edges[1]] != 0) +
                     (labeling[t.edges[2]] != 0);
    if (cuts == 1) ++invalid;
  }
  return invalid;
}

double objective_cubic(const EdgeGraph& graph, const TriangleSet& triangles,
                       std::span<const std::uint8_t> labeling, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("cubic penalty must be non-negative");
  return objective_linear(graph, labeling) +
         gamma * static_cast<double>(count_invalid_triangles(triangles, labeling));
}

namespace {

// Builds a result from a partition. The induced labeling is a multicut, so no
// triangle has exactly one cut and the cubic objective equals the linear one.
SolveResult result_from_partition(const EdgeGraph& graph, const Partition& partition) {
  SolveResult result;
  result.labeling = labeling_from_partition(graph, partition);
  result.partition = partition_from_labeling(graph, result.labeling);
  result.objective_linear = objective_linear(graph, result.labeling);
  result.objective_cubic = result.objective_linear;
  result.feasible = is_feasible(graph, result.labeling);
  return result;
}

}  // namespace

SolveResult solve_exact(const EdgeGraph& graph) {
  const std::size_t n = graph.num_nodes();
  if (n > kMaxExactNodes) throw std::invalid_argument("instance too large for exact solver");

  // For each node, the edges to lower-id nodes; placing node i adds the cost
  // of every such edge whose endpoint sits in another block.
  std::vector<std::vector<std::pair<NodeId, double>>> lower(n);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    lower[edge.v].emplace_back(edge.u, graph.costs()[e]);
  }

  Partition current(n, 0);
  Partition best(n, 0);
  double best_cost = std::numeric_limits<double>::infinity();

  // Restricted-growth strings in lexicographic order: node i joins one of the
  // blocks used so far or opens block `blocks`. Strict improvement keeps the
  // lexicographically smallest minimiser.
  auto search = [&](auto&& self, std::size_t i, std::uint32_t blocks, double cost) -> void {
    if (i == n) {
      if (cost < best_cost) {
        best_cost = cost;
        best = current;
      }
      return;
    }
    for (std::uint32_t b = 0; b <= blocks; ++b) {
      current[i] = b;
      double added = 0.0;
      for (const auto& [j, c] : lower[i]) {
        if (current[j] != b) added += c;
      }
      self(self, i + 1, b == blocks ? blocks + 1 : blocks, cost + added);
    }
  };
  if (n == 0) return result_from_partition(graph, {});
  current[0] = 0;
  search(search, 1, 1, 0.0);
  return result_from_partition(graph, best);
}

SolveResult round_and_repair(std::span<const double> marginals, const EdgeGraph& graph,
                             double threshold) {
  if (marginals.size() != graph.num_edges()) {
    throw std::invalid_argument("marginal count does not match edge count");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("rounding threshold must lie in (0,1)");
  }
  Labeling rounded(marginals.size());
  for (EdgeId e = 0; e < marginals.size(); ++e) {
    rounded[e] = marginals[e] >= threshold ? 1 : 0;
  }
  return result_from_partition(graph, partition_from_labeling(graph, rounded));
}

SolveResult greedy_contract(const EdgeGraph& graph) {
  const std::size_t n = graph.num_nodes();
  // Aggregated costs between current clusters, keyed by representative.
  std::vector<std::map<NodeId, double>> adjacency(n);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    adjacency[edge.u][edge.v] += graph.costs()[e];
    adjacency[edge.v][edge.u] += graph.costs()[e];
  }

  using Entry = std::tuple<double, NodeId, NodeId>;  // (cost, u, v), u < v
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& [v, c] : adjacency[u]) {
      if (u < v && c < 0.0) queue.emplace(c, u, v);
    }
  }

  std::vector<NodeId> representative(n);
  for (NodeId u = 0; u < n; ++u) representative[u] = u;
  std::vector<bool> alive(n, true);

  while (!queue.empty()) {
    const auto [cost, u, v] = queue.top();
    queue.pop();
    if (!alive[u] || !alive[v]) continue;
    const auto it = adjacency[u].find(v);
    if (it == adjacency[u].end() || it->second != cost) continue;

    // Merge v into u.
    alive[v] = false;
    representative[v] = u;
    adjacency[u].erase(v);
    for (const auto& [w, c] : adjacency[v]) {
      if (w == u) continue;
      adjacency[w].erase(v);
      const double merged = (adjacency[u][w] += c);
      adjacency[w][u] = merged;
    }
    adjacency[v].clear();
    for (const auto& [w, c] : adjacency[u]) {
      if (c < 0.0) queue.emplace(c, std::min(u, w), std::max(u, w));
    }
  }

  Partition partition(n);
  for (NodeId i = 0; i < n; ++i) {
    NodeId r = i;
    while (representative[r] != r) r = representative[r];
    partition[i] = r;
  }
  SolveResult contracted = result_from_partition(graph, canonical_partition(partition));
  if (contracted.objective_linear <= 0.0) return contracted;
  return result_from_partition(graph, Partition(n, 0));
}

}  // namespace amc
