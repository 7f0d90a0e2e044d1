#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "amc/cycles.hpp"
#include "amc/graph.hpp"
#include "amc/io.hpp"
#include "amc/meanfield.hpp"
#include "amc/metrics.hpp"
#include "amc/solvers.hpp"
#include "amc/synth.hpp"
#include "report.hpp"

namespace amc::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Bad flags or unreadable/unwritable files: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

GridConfig parse_distances(const std::string& text) {
  const auto colon = text.find(':');
  GridConfig config;
  try {
    if (colon == std::string::npos) {
      config.min_distance = config.max_distance = std::stoul(text);
    } else {
      config.min_distance = std::stoul(text.substr(0, colon));
      config.max_distance = std::stoul(text.substr(colon + 1));
    }
    config.validate();
  } catch (const std::exception&) {
    throw UsageError("bad --dist '" + text + "', expected MIN:MAX with 1 <= MIN <= MAX");
  }
  return config;
}

EdgeGraph load_graph(const std::string& path) {
  try {
    return io::read_graph(fs::path(path));
  } catch (const std::exception& e) {
    throw UsageError("cannot read graph '" + path + "': " + e.what());
  }
}

Partition load_partition(const std::string& path) {
  try {
    return io::read_partition(fs::path(path));
  } catch (const std::exception& e) {
    throw UsageError("cannot read partition '" + path + "': " + e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

void write_graph_file(const std::string& path, const EdgeGraph& graph) {
  auto out = open_output(path);
  io::write_graph(out, graph);
}

void write_partition_file(const std::string& path, const Partition& partition) {
  auto out = open_output(path);
  io::write_partition(out, partition);
}

std::uint32_t component_count(const Partition& partition) {
  std::uint32_t count = 0;
  for (auto id : partition) count = std::max(count, id + 1);
  return count;
}

// ---------------------------------------------------------------------------

struct BuildGraphArgs {
  std::string edge_map;
  std::string out;
  std::string dist = "2:8";
};

void cmd_build_graph(const BuildGraphArgs& args, std::ostream& out) {
  const GridConfig config = parse_distances(args.dist);
  EdgeMap map;
  try {
    map = io::read_edge_map(fs::path(args.edge_map));
  } catch (const std::exception& e) {
    throw UsageError("cannot read edge map '" + args.edge_map + "': " + e.what());
  }
  if (map.empty()) throw UsageError("cannot read edge map '" + args.edge_map + "': empty edge map");
  const EdgeGraph graph = build_grid_graph(map, config);
  const TriangleSet triangles = enumerate_triangles(graph);
  write_graph_file(args.out, graph);
  out << "nodes " << graph.num_nodes() << " edges " << graph.num_edges() << " triangles "
      << triangles.size() << '\n';
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
  std::string graph;
  std::string schedule = "adaptive";
  std::size_t iterations = 20;
  double threshold_a = 100.0;
  double increment = kDefaultIncrement;
  double rounding_threshold = 0.5;
  std::string params_file;
  std::optional<double> gamma_max;
  std::optional<double> unary_weight;
  std::string out;
  std::string report;
  std::string truth;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  bool no_timings = false;
};

PotentialParams load_params(const std::string& path) {
  PotentialParams params;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read params '" + path + "'");
    try {
      params = io::read_params(in);
    } catch (const std::exception& e) {
      throw UsageError("cannot read params '" + path + "': " + e.what());
    }
  }
  return params;
}

void cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Schedule schedule{};
  try {
    schedule = parse_schedule(args.schedule);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string graph_bytes = [&] {
    try {
      return io::read_file(args.graph);
    } catch (const std::exception& e) {
      throw UsageError("cannot read graph '" + args.graph + "': " + e.what());
    }
  }();
  EdgeGraph graph;
  try {
    std::istringstream in(graph_bytes);
    graph = io::read_graph(in);
  } catch (const std::exception& e) {
    throw UsageError("cannot read graph '" + args.graph + "': " + e.what());
  }
  std::optional<Partition> truth;
  if (!args.truth.empty()) {
    truth = load_partition(args.truth);
    if (truth->size() != graph.num_nodes()) {
      throw UsageError("truth partition node count does not match the graph");
    }
  }

  PotentialParams params = load_params(args.params_file);
  if (args.gamma_max) params.gamma_max = *args.gamma_max;
  if (args.unary_weight) params.unary_weight = *args.unary_weight;
  if (params.gamma_max_suspicious()) {
    err << "amc: warning: gamma_max is below a valid-pattern cost\n";
  }

  MeanFieldConfig config;
  config.iterations = args.iterations;
  try {
    config.cooling = CoolingState(schedule, args.threshold_a, args.increment);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.rounding_threshold = args.rounding_threshold;
  config.threads = std::max<std::size_t>(1, args.threads);

  const auto load_done = Clock::now();
  const TriangleSet triangles = enumerate_triangles(graph);
  const auto triangles_done = Clock::now();
  const auto run = run_meanfield(graph, graph.probs(), triangles, params, config);
  const auto meanfield_done = Clock::now();
  const SolveResult repaired = round_and_repair(run.marginals, graph, config.rounding_threshold);

  RunReport report;
  report.input = {{"graph", args.graph},
                  {"graph_fnv1a", fnv1a_hex(graph_bytes)},
                  {"nodes", graph.num_nodes()},
                  {"edges", graph.num_edges()},
                  {"triangles", triangles.size()}};
  if (!args.params_file.empty()) report.input["params"] = args.params_file;
  if (truth) report.input["truth"] = args.truth;
  report.config = to_json(config);
  report.config["params"] = to_json(params);
  report.trajectory = run.trajectory;
  report.final_stats = run.trajectory.back().stats;
  report.repaired = repaired;
  if (truth) {
    const SolveResult baseline = round_and_repair(graph.probs(), graph, config.rounding_threshold);
    report.scores["optimized"] = to_json(score_partitions(repaired.partition, *truth));
    report.scores["baseline"] = to_json(score_partitions(baseline.partition, *truth));
  }
  report.seed = args.seed;
  report.include_timings = !args.no_timings;
  report.timings = {{"load_ms", std::chrono::duration<double, std::milli>(load_done - start).count()},
                    {"triangles_ms",
                     std::chrono::duration<double, std::milli>(triangles_done - load_done).count()},
                    {"meanfield_ms",
                     std::chrono::duration<double, std::milli>(meanfield_done - triangles_done).count()},
                    {"total_ms", elapsed_ms(start)}};

  if (!args.out.empty()) write_graph_file(args.out, graph.with_probs(run.marginals));
  if (!args.report.empty()) {
    auto stream = open_output(args.report);
    stream << report.to_json().dump(2) << '\n';
  }
  const auto& first = run.trajectory.front().stats;
  const auto& last = run.trajectory.back();
  out << "triangles " << first.total_cycles << " invalid_relaxed " << first.invalid_relaxed << " -> "
      << last.stats.invalid_relaxed << " invalid_rounded " << first.invalid_rounded << " -> "
      << last.stats.invalid_rounded << " k " << last.k << " t " << last.t << '\n';
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string graph;
  std::string method = "round";
  double threshold = 0.5;
  std::string labeling_out;
  std::string partition_out;
};

void cmd_solve(const SolveArgs& args, std::ostream& out) {
  const EdgeGraph graph = load_graph(args.graph);
  SolveResult result;
  if (args.method == "exact") {
    result = solve_exact(graph);
  } else if (args.method == "greedy") {
    result = greedy_contract(graph);
  } else if (args.method == "round") {
    if (!(args.threshold > 0.0 && args.threshold < 1.0)) {
      throw UsageError("--threshold must lie in (0,1)");
    }
    result = round_and_repair(graph.probs(), graph, args.threshold);
  } else {
    throw UsageError("unknown method '" + args.method + "'");
  }
  if (!args.labeling_out.empty()) {
    auto stream = open_output(args.labeling_out);
    io::write_labeling(stream, graph, result.labeling);
  }
  if (!args.partition_out.empty()) write_partition_file(args.partition_out, result.partition);

  const TriangleSet triangles = enumerate_triangles(graph);
  const double cubic = objective_cubic(graph, triangles, result.labeling, PotentialParams{}.gamma_max);
  out << std::setprecision(10) << "method " << args.method << " objective_linear "
      << result.objective_linear << " objective_cubic " << cubic << " feasible "
      << (result.feasible ? "true" : "false") << " components " << component_count(result.partition)
      << '\n';
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string graph;
  std::string marginals;
  double threshold = 0.5;
  std::string json;
};

void cmd_check(const CheckArgs& args, std::ostream& out) {
  const EdgeGraph graph = load_graph(args.graph);
  std::vector<double> marginals(graph.probs().begin(), graph.probs().end());
  if (!args.marginals.empty()) {
    const EdgeGraph with_marginals = load_graph(args.marginals);
    if (!std::equal(graph.edges().begin(), graph.edges().end(), with_marginals.edges().begin(),
                    with_marginals.edges().end())) {
      throw UsageError("marginals file does not share the graph's edge list");
    }
    marginals.assign(with_marginals.probs().begin(), with_marginals.probs().end());
  }
  if (!(args.threshold > 0.0 && args.threshold < 1.0)) {
    throw UsageError("--threshold must lie in (0,1)");
  }
  const CycleStats stats = count_invalid(marginals, enumerate_triangles(graph), args.threshold);
  out << "total " << stats.total_cycles << " invalid_relaxed " << stats.invalid_relaxed
      << " invalid_rounded " << stats.invalid_rounded << '\n';
  if (!args.json.empty()) {
    auto stream = open_output(args.json);
    nlohmann::ordered_json doc = {{"version", kReportVersion}, {"cycle_stats", to_json(stats)}};
    stream << doc.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------

struct MetricsArgs {
  std::string first;
  std::string second;
  std::string csv;
};

void cmd_metrics(const MetricsArgs& args, std::ostream& out) {
  const Partition a = load_partition(args.first);
  const Partition b = load_partition(args.second);
  if (a.size() != b.size()) {
    throw UsageError("partition node counts differ (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  const PartitionScore score = score_partitions(a, b);
  std::ostringstream row;
  row << std::setprecision(10) << score.rand_index << ',' << score.variation_of_information;
  out << "rand_index,variation_of_information\n" << row.str() << '\n';
  if (!args.csv.empty()) {
    const bool fresh = !fs::exists(args.csv) || fs::file_size(args.csv) == 0;
    std::ofstream stream(args.csv, std::ios::app);
    if (!stream) throw UsageError("cannot write '" + args.csv + "'");
    if (fresh) stream << "partition_a,partition_b,rand_index,variation_of_information\n";
    stream << args.first << ',' << args.second << ',' << row.str() << '\n';
  }
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  SynthOptions options;
  std::string dist = "2:4";
  std::string out;
  std::string truth;
};

void cmd_synth(SynthArgs args, std::ostream& out) {
  args.options.grid = parse_distances(args.dist);
  if (args.options.height == 0 || args.options.width == 0 || args.options.regions == 0) {
    throw UsageError("height, width and regions must be positive");
  }
  const SynthInstance instance = make_planted_instance(args.options);
  write_graph_file(args.out, instance.graph);
  if (!args.truth.empty()) write_partition_file(args.truth, instance.truth_partition);
  out << "nodes " << instance.graph.num_nodes() << " edges " << instance.graph.num_edges()
      << " regions " << component_count(instance.truth_partition) << '\n';
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::vector<std::string> graphs;
  std::vector<std::string> truths;
  std::string schedule = "adaptive";
  std::size_t iterations = 5;
  std::size_t fit_iterations = 10;
  double threshold_a = 100.0;
  double learning_rate = 1.0;
  std::string params_file;
  std::string out;
  std::size_t threads = 1;
};

void cmd_fit(const FitArgs& args, std::ostream& out) {
  if (args.graphs.size() != args.truths.size()) {
    throw UsageError("need one --truth per --graph");
  }
  std::vector<EdgeGraph> graphs;
  std::vector<TriangleSet> triangles;
  for (const auto& path : args.graphs) graphs.push_back(load_graph(path));
  for (const auto& graph : graphs) triangles.push_back(enumerate_triangles(graph));
  std::vector<FitInstance> instances;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Partition truth = load_partition(args.truths[i]);
    if (truth.size() != graphs[i].num_nodes()) {
      throw UsageError("truth '" + args.truths[i] + "' does not match its graph");
    }
    instances.push_back({&graphs[i], &triangles[i],
                         EdgeMarginals(graphs[i].probs().begin(), graphs[i].probs().end()),
                         labeling_from_partition(graphs[i], truth)});
  }
  MeanFieldConfig config;
  config.iterations = args.iterations;
  try {
    config.cooling = CoolingState(parse_schedule(args.schedule), args.threshold_a);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.threads = std::max<std::size_t>(1, args.threads);
  FitOptions options;
  options.iterations = args.fit_iterations;
  options.learning_rate = args.learning_rate;
  options.initial = load_params(args.params_file);

  const FitResult result = fit_costs(instances, config, options);
  if (!args.out.empty()) {
    auto stream = open_output(args.out);
    io::write_params(stream, result.params);
  }
  out << std::setprecision(10) << "initial_loss " << result.initial_loss << " final_loss "
      << result.final_loss << " accepted " << result.accepted_steps << '\n';
  io::write_params(out, result.params);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive mean-field multicut optimization"};
  app.name("amc");
  app.require_subcommand(1);
  std::function<void()> action;

  BuildGraphArgs build;
  auto* build_cmd = app.add_subcommand("build-graph", "Build a grid graph from an edge map");
  build_cmd->add_option("edge_map", build.edge_map, "PGM (P2/P5) or CSV edge map")->required();
  build_cmd->add_option("-o,--out", build.out, "Output graph file")->required();
  build_cmd->add_option("--dist", build.dist, "Grid distances MIN:MAX")->capture_default_str();
  build_cmd->callback([&] { action = [&] { cmd_build_graph(build, out); }; });

  OptimizeArgs optimize;
  auto* opt_cmd = app.add_subcommand("optimize", "Run cooled mean-field inference on a graph");
  opt_cmd->add_option("graph", optimize.graph, "Graph file")->required();
  opt_cmd->add_option("--schedule", optimize.schedule,
                      "none | adaptive | softmax-linear | softmax-adaptive")
      ->capture_default_str();
  opt_cmd->add_option("--iters", optimize.iterations, "Mean-field iterations")->capture_default_str();
  opt_cmd->add_option("--threshold-a", optimize.threshold_a, "Invalid-cycle threshold a")
      ->capture_default_str();
  opt_cmd->add_option("--increment", optimize.increment, "Cooling increment")->capture_default_str();
  opt_cmd->add_option("--rounding-threshold", optimize.rounding_threshold)->capture_default_str();
  opt_cmd->add_option("--params", optimize.params_file, "Potential parameter file");
  opt_cmd->add_option("--gamma-max", optimize.gamma_max, "Override gamma_max");
  opt_cmd->add_option("--unary-weight", optimize.unary_weight, "Override unary weight");
  opt_cmd->add_option("-o,--out", optimize.out, "Write the graph with optimized marginals");
  opt_cmd->add_option("--report", optimize.report, "Write the JSON run report");
  opt_cmd->add_option("--truth", optimize.truth, "Ground-truth partition for scoring");
  opt_cmd->add_option("--threads", optimize.threads, "Worker threads")->capture_default_str();
  opt_cmd->add_option("--seed", optimize.seed, "Seed echoed into the report")->capture_default_str();
  opt_cmd->add_flag("--no-timings", optimize.no_timings, "Omit timings from the report");
  opt_cmd->callback([&] { action = [&] { cmd_optimize(optimize, out, err); }; });

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decompose a graph");
  solve_cmd->add_option("graph", solve.graph, "Graph file")->required();
  solve_cmd->add_option("--method", solve.method, "exact | greedy | round")->capture_default_str();
  solve_cmd->add_option("--threshold", solve.threshold, "Rounding threshold")->capture_default_str();
  solve_cmd->add_option("--labeling", solve.labeling_out, "Write edge labels (CSV)");
  solve_cmd->add_option("--partition", solve.partition_out, "Write node partition (CSV)");
  solve_cmd->callback([&] { action = [&] { cmd_solve(solve, out); }; });

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Count invalid triangle inequalities");
  check_cmd->add_option("graph", check.graph, "Graph file")->required();
  check_cmd->add_option("marginals", check.marginals, "Graph file whose probabilities are marginals");
  check_cmd->add_option("--threshold", check.threshold, "Rounding threshold")->capture_default_str();
  check_cmd->add_option("--json", check.json, "Write the counts as JSON");
  check_cmd->callback([&] { action = [&] { cmd_check(check, out); }; });

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Compare two partitions");
  metrics_cmd->add_option("partition_a", metrics.first)->required();
  metrics_cmd->add_option("partition_b", metrics.second)->required();
  metrics_cmd->add_option("--csv", metrics.csv, "Append the score row to a CSV file");
  metrics_cmd->callback([&] { action = [&] { cmd_metrics(metrics, out); }; });

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-partition grid instance");
  synth_cmd->add_option("-o,--out", synth.out, "Output graph file")->required();
  synth_cmd->add_option("--truth", synth.truth, "Output ground-truth partition");
  synth_cmd->add_option("--height", synth.options.height)->capture_default_str();
  synth_cmd->add_option("--width", synth.options.width)->capture_default_str();
  synth_cmd->add_option("--regions", synth.options.regions)->capture_default_str();
  synth_cmd->add_option("--noise", synth.options.noise)->capture_default_str();
  synth_cmd->add_option("--margin", synth.options.margin)->capture_default_str();
  synth_cmd->add_option("--dist", synth.dist, "Grid distances MIN:MAX")->capture_default_str();
  synth_cmd->add_option("--seed", synth.options.seed)->capture_default_str();
  synth_cmd->callback([&] { action = [&] { cmd_synth(synth, out); }; });

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit potential costs against ground truth");
  fit_cmd->add_option("--graph", fit.graphs, "Graph file (repeatable)")->required();
  fit_cmd->add_option("--truth", fit.truths, "Truth partition per graph (repeatable)")->required();
  fit_cmd->add_option("--schedule", fit.schedule)->capture_default_str();
  fit_cmd->add_option("--iters", fit.iterations, "Mean-field iterations per run")->capture_default_str();
  fit_cmd->add_option("--fit-iters", fit.fit_iterations, "Descent iterations")->capture_default_str();
  fit_cmd->add_option("--threshold-a", fit.threshold_a)->capture_default_str();
  fit_cmd->add_option("--learning-rate", fit.learning_rate)->capture_default_str();
  fit_cmd->add_option("--params", fit.params_file, "Initial parameter file");
  fit_cmd->add_option("-o,--out", fit.out, "Write fitted parameters");
  fit_cmd->add_option("--threads", fit.threads)->capture_default_str();
  fit_cmd->callback([&] { action = [&] { cmd_fit(fit, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "amc: usage error: " << one_line(e.what()) << '\n';
    return kUsageError;
  }

  try {
    if (action) action();
    return kSuccess;
  } catch (const UsageError& e) {
    err << "amc: error: " << one_line(e.what()) << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "amc: error: " << one_line(e.what()) << '\n';
    return kComputationError;
  }
}

}  // namespace amc::cli
