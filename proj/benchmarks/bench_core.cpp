#include <benchmark/benchmark.h>

#include <random>

#include "amc/cycles.hpp"
#include "amc/meanfield.hpp"
#include "amc/solvers.hpp"
#include "amc/synth.hpp"

using namespace amc;

namespace {

SynthInstance grid_instance(std::size_t side) {
  SynthOptions options;
  options.height = options.width = side;
  return make_planted_instance(options);
}

EdgeMap random_map(std::size_t side) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(side * side);
  for (auto& v : values) v = unit(rng);
  return EdgeMap(side, side, values);
}

}  // namespace

static void BM_BuildGridGraph(benchmark::State& state) {
  const auto map = random_map(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_grid_graph(map, {2, 8}));
}
BENCHMARK(BM_BuildGridGraph)->Arg(32)->Arg(64);

static void BM_EnumerateTriangles(benchmark::State& state) {
  const auto inst = grid_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_triangles(inst.graph));
}
BENCHMARK(BM_EnumerateTriangles)->Arg(32)->Arg(64);

static void BM_MeanfieldStep(benchmark::State& state) {
  const auto inst = grid_instance(static_cast<std::size_t>(state.range(0)));
  const auto tris = enumerate_triangles(inst.graph);
  const std::vector<double> q(inst.graph.probs().begin(), inst.graph.probs().end());
  const CoolingState cooling(Schedule::adaptive_phi);
  const auto threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(meanfield_step(q, inst.graph, tris, PotentialParams{}, cooling, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(q.size()));
}
BENCHMARK(BM_MeanfieldStep)->Args({32, 1})->Args({64, 1})->Args({64, 4});

static void BM_SolveExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> cost(-5.0, 5.0);
  std::vector<Edge> edges;
  std::vector<double> costs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      edges.push_back({u, v});
      costs.push_back(cost(rng));
    }
  const auto g = EdgeGraph::with_costs(n, edges, costs);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(g));
}
BENCHMARK(BM_SolveExact)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_GreedyContract(benchmark::State& state) {
  const auto inst = grid_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_contract(inst.graph));
}
BENCHMARK(BM_GreedyContract)->Arg(32);
BENCHMARK_MAIN();
