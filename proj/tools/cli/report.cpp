#include "report.hpp"

#include <cstdio>

namespace amc::cli {

using nlohmann::ordered_json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char text[17];
  std::snprintf(text, sizeof text, "%016llx", static_cast<unsigned long long>(hash));
  return text;
}

ordered_json to_json(const CycleStats& stats) {
  return {{"total_cycles", stats.total_cycles},
          {"invalid_relaxed", stats.invalid_relaxed},
          {"invalid_rounded", stats.invalid_rounded}};
}

ordered_json to_json(const PotentialParams& params) {
  return {{"gamma_jjj", params.gamma_jjj},
          {"gamma_jcc", params.gamma_jcc},
          {"gamma_ccc", params.gamma_ccc},
          {"gamma_max", params.gamma_max},
          {"unary_weight", params.unary_weight}};
}

ordered_json to_json(const MeanFieldConfig& config) {
  const auto& cooling = config.cooling;
  return {{"schedule", to_string(cooling.schedule())},
          {"iterations", config.iterations},
          {"threshold_a", cooling.threshold_a()},
          {"increment", cooling.increment()},
          {"initial_k", cooling.initial_k()},
          {"initial_t", cooling.initial_t()},
          {"granularity",
           config.granularity == Granularity::per_iteration ? "per_iteration" : "per_epoch"},
          {"rounding_threshold", config.rounding_threshold}};
}

ordered_json to_json(const Trajectory& trajectory) {
  ordered_json records = ordered_json::array();
  for (const auto& record : trajectory) {
    records.push_back({{"iteration", record.iteration},
                       {"cycle_stats", to_json(record.stats)},
                       {"k", record.k},
                       {"t", record.t},
                       {"objective_linear", record.objective_linear},
                       {"objective_cubic", record.objective_cubic}});
  }
  return records;
}

ordered_json to_json(const SolveResult& result) {
  std::uint32_t components = 0;
  for (auto id : result.partition) components = std::max(components, id + 1);
  std::size_t cuts = 0;
  for (auto y : result.labeling) cuts += y;
  return {{"objective_linear", result.objective_linear},
          {"objective_cubic", result.objective_cubic},
          {"feasible", result.feasible},
          {"components", components},
          {"cut_edges", cuts}};
}

ordered_json to_json(const PartitionScore& score) {
  return {{"rand_index", score.rand_index},
          {"variation_of_information", score.variation_of_information}};
}

ordered_json RunReport::to_json() const {
  ordered_json report;
  report["version"] = kReportVersion;
  report["input"] = input;
  report["config"] = config;
  report["trajectory"] = cli::to_json(trajectory);
  const auto& last = trajectory.back();
  report["final"] = {{"cycle_stats", cli::to_json(final_stats)},
                     {"objectives",
                      {{"rounded_linear", last.objective_linear},
                       {"rounded_cubic", last.objective_cubic},
                       {"repaired_linear", repaired.objective_linear}}},
                     {"feasible", repaired.feasible},
                     {"repaired", cli::to_json(repaired)}};
  report["scores"] = scores;
  report["seed"] = seed;
  if (include_timings) report["timings"] = timings;
  return report;
}

}  // namespace amc::cli
