#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "amc/cycles.hpp"
#include "amc/meanfield.hpp"
#include "amc/metrics.hpp"
#include "amc/solvers.hpp"

namespace amc::cli {

inline constexpr int kReportVersion = 1;

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

nlohmann::ordered_json to_json(const CycleStats& stats);
nlohmann::ordered_json to_json(const PotentialParams& params);
nlohmann::ordered_json to_json(const MeanFieldConfig& config);
nlohmann::ordered_json to_json(const Trajectory& trajectory);
nlohmann::ordered_json to_json(const SolveResult& result);
nlohmann::ordered_json to_json(const PartitionScore& score);

struct RunReport {
  nlohmann::ordered_json input = nlohmann::ordered_json::object();
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  Trajectory trajectory;
  CycleStats final_stats;
  SolveResult repaired;
  nlohmann::ordered_json scores = nlohmann::ordered_json::object();
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  bool include_timings = true;

  nlohmann::ordered_json to_json() const;
};

}  // namespace amc::cli
