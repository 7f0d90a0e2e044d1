#include "amc/cycles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "union_find.hpp"

namespace amc {

namespace {

struct Neighbor {
  NodeId node;
  EdgeId edge;
};

// Sorted adjacency restricted to higher-id neighbors.
std::vector<std::vector<Neighbor>> forward_adjacency(const EdgeGraph& graph) {
  std::vector<std::vector<Neighbor>> adjacency(graph.num_nodes());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    adjacency[edge.u].push_back({edge.v, e});
  }
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return adjacency;
}

}  // namespace

TriangleSet::TriangleSet(std::vector<Triangle> triangles, std::size_t num_edges)
    : triangles_(std::move(triangles)), incident_(num_edges) {
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (EdgeId e : triangles_[t].edges) {
      if (e >= num_edges) throw std::invalid_argument("triangle edge out of range");
      incident_[e].push_back(static_cast<std::uint32_t>(t));
    }
  }
}

TriangleSet enumerate_triangles(const EdgeGraph& graph) {
  const auto adjacency = forward_adjacency(graph);
  std::vector<Triangle> triangles;
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const auto& nu = adjacency[u];
    for (const Neighbor& uv : nu) {
      const auto& nv = adjacency[uv.node];
      // Intersect the forward lists of u (beyond v) and v.
      auto a = std::upper_bound(
          nu.begin(), nu.end(), uv.node,
          [](NodeId x, const Neighbor& n) { return x < n.node; });
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (a->node < b->node) {
          ++a;
        } else if (b->node < a->node) {
          ++b;
        } else {
          triangles.push_back({{uv.edge, b->edge, a->edge}, {u, uv.node, a->node}});
          ++a;
          ++b;
        }
      }
    }
  }
  return TriangleSet(std::move(triangles), graph.num_edges());
}

bool triangle_violated(std::array<double, 3> values, ViolationMode mode) {
  if (mode == ViolationMode::binary) {
    for (double v : values) {
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("binary triangle check needs values in {0,1}");
      }
    }
  }
  const auto& [a, b, c] = values;
  return a > b + c || b > a + c || c > a + b;
}

CycleStats count_invalid(std::span<const double> marginals,
                         const TriangleSet& triangles,
                         double rounding_threshold) {
  if (marginals.size() != triangles.num_edges()) {
    throw std::invalid_argument("marginal count does not match edge count");
  }
  if (!(rounding_threshold > 0.0 && rounding_threshold < 1.0)) {
    throw std::invalid_argument("rounding threshold must lie in (0,1)");
  }
  CycleStats stats;
  stats.total_cycles = triangles.size();
  for (const Triangle& t : triangles.triangles()) {
    std::array<double, 3> relaxed{};
    std::array<double, 3> rounded{};
    for (std::size_t i = 0; i < 3; ++i) {
      relaxed[i] = marginals[t.edges[i]];
      rounded[i] = relaxed[i] >= rounding_threshold ? 1.0 : 0.0;
    }
    if (triangle_violated(relaxed)) ++stats.invalid_relaxed;
    if (triangle_violated(rounded, ViolationMode::binary)) ++stats.invalid_rounded;
  }
  return stats;
}

std::vector<std::vector<EdgeId>> enumerate_chordless_cycles(
    const EdgeGraph& graph, std::size_t max_length) {
  const std::size_t n = graph.num_nodes();
  if (n > kMaxCycleEnumerationNodes) {
    throw std::invalid_argument("graph too large for exhaustive cycle enumeration");
  }
  max_length = std::min(max_length, n);

  constexpr EdgeId kNone = static_cast<EdgeId>(-1);
  std::vector<std::vector<EdgeId>> edge_between(n, std::vector<EdgeId>(n, kNone));
  std::vector<std::vector<NodeId>> neighbors(n);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    edge_between[edge.u][edge.v] = e;
    edge_between[edge.v][edge.u] = e;
    neighbors[edge.u].push_back(edge.v);
    neighbors[edge.v].push_back(edge.u);
  }
  for (auto& list : neighbors) std::sort(list.begin(), list.end());
  const auto adjacent = [&](NodeId a, NodeId b) { return edge_between[a][b] != kNone; };

  std::vector<std::vector<EdgeId>> cycles;
  std::vector<NodeId> path;
  std::vector<bool> on_path(n, false);

  // Extends an induced path starting at path[0]; every node on it is larger
  // than path[0], and only consecutive path nodes are adjacent.
  std::function<void()> extend = [&] {
    const NodeId start = path.front();
    const NodeId last = path.back();
    for (NodeId next : neighbors[last]) {
      if (next <= start || on_path[next]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        if (adjacent(path[i], next)) {
          chord = true;
          break;
        }
      }
      if (chord) continue;
      if (path.size() >= 2 && adjacent(start, next)) {
        // Closing node. Emit once per reflection: second node < final node.
        if (path.size() + 1 <= max_length && path[1] < next) {
          std::vector<EdgeId> cycle;
          path.push_back(next);
          for (std::size_t i = 0; i < path.size(); ++i) {
            cycle.push_back(edge_between[path[i]][path[(i + 1) % path.size()]]);
          }
          path.pop_back();
          cycles.push_back(std::move(cycle));
        }
        continue;
      }
      if (path.size() + 1 >= max_length) continue;
      path.push_back(next);
      on_path[next] = true;
      extend();
      on_path[next] = false;
      path.pop_back();
    }
  };

  for (NodeId start = 0; start < n; ++start) {
    path.assign(1, start);
    on_path[start] = true;
    extend();
    on_path[start] = false;
  }
  return cycles;
}

bool is_feasible(const EdgeGraph& graph, std::span<const std::uint8_t> labeling) {
  if (labeling.size() != graph.num_edges()) {
    throw std::invalid_argument("labeling length does not match edge count");
  }
  detail::UnionFind sets(graph.num_nodes());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (labeling[e] == 0) sets.unite(graph.edge(e).u, graph.edge(e).v);
  }
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (labeling[e] != 0 && sets.find(graph.edge(e).u) == sets.find(graph.edge(e).v)) {
      return false;
    }
  }
  return true;
}

}  // namespace amc
