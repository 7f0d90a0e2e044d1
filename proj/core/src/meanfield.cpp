#include "amc/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "amc/solvers.hpp"
#include "parallel.hpp"

namespace amc {

double PotentialParams::max_valid() const {
  return std::max({gamma_jjj, gamma_jcc, gamma_ccc});
}

std::string_view to_string(Schedule schedule) {
  switch (schedule) {
    case Schedule::none:
      return "none";
    case Schedule::adaptive_phi:
      return "adaptive_phi";
    case Schedule::softmax_linear:
      return "softmax_linear";
    case Schedule::softmax_adaptive:
      return "softmax_adaptive";
  }
  return "unknown";
}

Schedule parse_schedule(std::string_view name) {
  if (name == "none") return Schedule::none;
  if (name == "adaptive" || name == "adaptive_phi") return Schedule::adaptive_phi;
  if (name == "softmax-linear" || name == "softmax_linear") return Schedule::softmax_linear;
  if (name == "softmax-adaptive" || name == "softmax_adaptive") {
    return Schedule::softmax_adaptive;
  }
  throw std::invalid_argument("unknown schedule '" + std::string(name) + "'");
}

CoolingState::CoolingState(Schedule schedule, double threshold_a, double increment,
                           double initial_k, double initial_t)
    : schedule_(schedule),
      threshold_a_(threshold_a),
      increment_(increment),
      initial_k_(initial_k),
      initial_t_(initial_t) {
  if (!(increment > 0.0)) throw std::invalid_argument("increment must be positive");
  if (!(initial_k >= 1.0)) throw std::invalid_argument("k must be at least 1");
  if (!(initial_t > 0.0 && initial_t <= 1.0)) {
    throw std::invalid_argument("temperature must lie in (0, 1]");
  }
}

double CoolingState::t() const {
  const double t = initial_t_ - increment_ * static_cast<double>(t_steps_);
  return std::max(t, std::min(kMinTemperature, initial_t_));
}

void CoolingState::update(double invalid_cycles) {
  const bool below_threshold = invalid_cycles < threshold_a_;
  switch (schedule_) {
    case Schedule::none:
      break;
    case Schedule::adaptive_phi:
      if (below_threshold) ++k_steps_;
      break;
    case Schedule::softmax_linear:
      if (t() > kMinTemperature) ++t_steps_;
      break;
    case Schedule::softmax_adaptive:
      if (below_threshold && t() > kMinTemperature) ++t_steps_;
      break;
  }
}

double phi(double q, double k) {
  if (q >= 0.5) return 1.0 - std::pow(1.0 - q, k);
  return std::pow(q, k);
}

double unary_potential(double p, int label) {
  const double lo = kProbabilityEpsilon;
  const double hi = 1.0 - kProbabilityEpsilon;
  return label != 0 ? -std::log(std::clamp(p, lo, hi))
                    : -std::log(std::clamp(1.0 - p, lo, hi));
}

std::array<double, 2> softmax_with_temperature(std::array<double, 2> exponents,
                                               double t) {
  const double top = std::max(exponents[0], exponents[1]);
  const double a = std::exp((exponents[0] - top) / t);
  const double b = std::exp((exponents[1] - top) / t);
  return {a / (a + b), b / (a + b)};
}

namespace {

// Clique cost of one triangle for the centre edge taking label 0 and 1, given
// the phi-transformed label probabilities of the two other edges.
std::array<double, 2> clique_cost(double q_first, double q_second,
                                  const PotentialParams& params, double k) {
  const double first_cut = phi(q_first, k);
  const double first_join = phi(1.0 - q_first, k);
  const double second_cut = phi(q_second, k);
  const double second_join = phi(1.0 - q_second, k);

  // Centre edge joined: valid patterns (0,0,0) and (0,1,1).
  const double jj = first_join * second_join;
  const double cc = first_cut * second_cut;
  const double valid_join = jj + cc;
  const double cost_join =
      jj * params.gamma_jjj + cc * params.gamma_jcc + (1.0 - valid_join) * params.gamma_max;

  // Centre edge cut: valid patterns (1,0,1), (1,1,0) and (1,1,1).
  const double mixed = first_join * second_cut + first_cut * second_join;
  const double valid_cut = mixed + cc;
  const double cost_cut = mixed * params.gamma_jcc + cc * params.gamma_ccc +
                          (1.0 - valid_cut) * params.gamma_max;
  return {cost_join, cost_cut};
}

}  // namespace

EdgeMarginals meanfield_step(std::span<const double> marginals, const EdgeGraph& graph,
                             const TriangleSet& triangles, const PotentialParams& params,
                             const CoolingState& cooling, std::size_t threads) {
  const std::size_t m = graph.num_edges();
  if (marginals.size() != m || triangles.num_edges() != m) {
    throw std::invalid_argument("marginals, graph and triangles disagree in size");
  }
  const double k = cooling.k();
  const double t = cooling.t();
  const auto probs = graph.probs();
  const auto all = triangles.triangles();

  EdgeMarginals next(m);
  detail::parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
    for (EdgeId e = begin; e < end; ++e) {
      double energy_join = params.unary_weight * unary_potential(probs[e], 0);
      double energy_cut = params.unary_weight * unary_potential(probs[e], 1);
      for (std::uint32_t index : triangles.incident(e)) {
        const Triangle& tri = all[index];
        std::array<EdgeId, 2> others{};
        std::size_t n = 0;
        for (EdgeId other : tri.edges) {
          if (other != e) others[n++] = other;
        }
        const auto cost = clique_cost(marginals[others[0]], marginals[others[1]], params, k);
        energy_join += cost[0];
        energy_cut += cost[1];
      }
      if (!std::isfinite(energy_join) || !std::isfinite(energy_cut)) {
        throw std::overflow_error("potential overflow");
      }
      next[e] = std::clamp(softmax_with_temperature({-energy_join, -energy_cut}, t)[1],
                           kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
    }
  });
  return next;
}

namespace {

TrajectoryRecord record_state(std::size_t iteration, const CycleStats& stats,
                              std::span<const double> marginals, const EdgeGraph& graph,
                              const TriangleSet& triangles, const PotentialParams& params,
                              const CoolingState& cooling, double threshold) {
  TrajectoryRecord record;
  record.iteration = iteration;
  record.stats = stats;
  record.k = cooling.k();
  record.t = cooling.t();
  Labeling rounded(marginals.size());
  for (std::size_t e = 0; e < marginals.size(); ++e) {
    rounded[e] = marginals[e] >= threshold ? 1 : 0;
  }
  record.objective_linear = objective_linear(graph, rounded);
  record.objective_cubic = objective_cubic(graph, triangles, rounded, params.gamma_max);
  return record;
}

}  // namespace

MeanFieldResult run_meanfield(const EdgeGraph& graph, std::span<const double> initial,
                              const TriangleSet& triangles, const PotentialParams& params,
                              const MeanFieldConfig& config) {
  if (initial.size() != graph.num_edges()) {
    throw std::invalid_argument("initial marginal count does not match edge count");
  }
  MeanFieldResult result;
  result.cooling = config.cooling;
  result.marginals.assign(initial.begin(), initial.end());
  result.trajectory.reserve(config.iterations + 1);
  const double threshold = config.rounding_threshold;
  result.trajectory.push_back(
      record_state(0, count_invalid(result.marginals, triangles, threshold),
                   result.marginals, graph, triangles, params, result.cooling, threshold));
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    result.marginals = meanfield_step(result.marginals, graph, triangles, params,
                                      result.cooling, config.threads);
    const auto stats = count_invalid(result.marginals, triangles, threshold);
    if (config.granularity == Granularity::per_iteration) {
      result.cooling.update(static_cast<double>(stats.invalid_relaxed));
    }
    result.trajectory.push_back(record_state(it, stats, result.marginals, graph, triangles,
                                             params, result.cooling, threshold));
  }
  return result;
}

}  // namespace amc
