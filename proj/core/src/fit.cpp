#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amc/meanfield.hpp"

namespace amc {

double& gamma_ref(PotentialParams& params, GammaParam which) {
  switch (which) {
    case GammaParam::jjj:
      return params.gamma_jjj;
    case GammaParam::jcc:
      return params.gamma_jcc;
    case GammaParam::ccc:
      return params.gamma_ccc;
    case GammaParam::max:
      return params.gamma_max;
  }
  throw std::invalid_argument("unknown gamma parameter");
}

namespace {

double binary_cross_entropy(double q, std::uint8_t truth) {
  const double p = std::clamp(q, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  return truth != 0 ? -std::log(p) : -std::log(1.0 - p);
}

void check_instances(std::span<const FitInstance> instances) {
  if (instances.empty()) throw std::invalid_argument("no fitting instances");
  for (const auto& instance : instances) {
    if (instance.graph == nullptr || instance.triangles == nullptr) {
      throw std::invalid_argument("fitting instance without graph or triangles");
    }
    const std::size_t m = instance.graph->num_edges();
    if (instance.initial.size() != m || instance.truth.size() != m) {
      throw std::invalid_argument("fitting instance size mismatch");
    }
  }
}

double average_invalid(std::span<const FitInstance> instances,
                       const PotentialParams& params, const MeanFieldConfig& config) {
  double total = 0.0;
  for (const auto& instance : instances) {
    const auto run = run_meanfield(*instance.graph, instance.initial, *instance.triangles,
                                   params, config);
    total += static_cast<double>(run.trajectory.back().stats.invalid_relaxed);
  }
  return total / static_cast<double>(instances.size());
}

}  // namespace

double fit_loss(std::span<const FitInstance> instances, const PotentialParams& params,
                const MeanFieldConfig& config) {
  check_instances(instances);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& instance : instances) {
    const auto run = run_meanfield(*instance.graph, instance.initial, *instance.triangles,
                                   params, config);
    for (std::size_t e = 0; e < run.marginals.size(); ++e) {
      sum += binary_cross_entropy(run.marginals[e], instance.truth[e]);
    }
    count += run.marginals.size();
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double fit_gradient(std::span<const FitInstance> instances, const PotentialParams& params,
                    const MeanFieldConfig& config, GammaParam which, double h) {
  PotentialParams plus = params;
  PotentialParams minus = params;
  gamma_ref(plus, which) += h;
  gamma_ref(minus, which) -= h;
  return (fit_loss(instances, plus, config) - fit_loss(instances, minus, config)) / (2.0 * h);
}

FitResult fit_costs(std::span<const FitInstance> instances, const MeanFieldConfig& config,
                    const FitOptions& options) {
  check_instances(instances);
  MeanFieldConfig current_config = config;
  FitResult result;
  result.params = options.initial;
  double loss = fit_loss(instances, result.params, current_config);
  result.initial_loss = loss;
  result.loss_history.push_back(loss);

  double rate = options.learning_rate;
  for (std::size_t it = 0; it < options.iterations; ++it) {
    PotentialParams candidate = result.params;
    for (GammaParam which : kGammaParams) {
      gamma_ref(candidate, which) -=
          rate * fit_gradient(instances, result.params, current_config, which,
                              options.perturbation);
    }
    const double candidate_loss = fit_loss(instances, candidate, current_config);
    if (candidate_loss < loss) {
      result.params = candidate;
      loss = candidate_loss;
      ++result.accepted_steps;
      result.loss_history.push_back(loss);
    } else {
      rate *= 0.5;
    }
    if (config.granularity == Granularity::per_epoch) {
      // One fitting iteration is one epoch: cool on the average invalid count,
      // then re-baseline the loss under the new cooling state.
      current_config.cooling.update(average_invalid(instances, result.params, current_config));
      loss = fit_loss(instances, result.params, current_config);
    }
  }
  result.final_loss = loss;
  return result;
}

}  // namespace amc
