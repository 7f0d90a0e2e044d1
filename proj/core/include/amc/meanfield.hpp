#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "amc/cycles.hpp"
#include "amc/graph.hpp"

namespace amc {

/// Costs of the third-order cycle potentials plus the unary weight.
/// The valid triangle patterns are grouped by how many edges are cut:
/// none (join, join, join), two (join, cut, cut) and three (cut, cut, cut).
struct PotentialParams {
  double gamma_jjj = 0.0;
  double gamma_jcc = 0.0;
  double gamma_ccc = 0.0;
  double gamma_max = 10.0;
  double unary_weight = 1.0;

  double max_valid() const;
  /// True if gamma_max is not above every valid-pattern cost.
  bool gamma_max_suspicious() const { return gamma_max < max_valid(); }

  friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

enum class Schedule { none, adaptive_phi, softmax_linear, softmax_adaptive };

std::string_view to_string(Schedule schedule);
/// Accepts the enum names and the CLI spellings (adaptive, softmax-linear, ...).
Schedule parse_schedule(std::string_view name);

inline constexpr double kDefaultIncrement = 0.05;
inline constexpr double kMinTemperature = 0.05;

/// Cooling exponent k and softmax temperature t. Both are derived from step
/// counters so a trajectory of n increments lands exactly on
/// initial + n * increment.
class CoolingState {
 public:
  CoolingState() = default;
  explicit CoolingState(Schedule schedule, double threshold_a = 100.0,
                        double increment = kDefaultIncrement,
                        double initial_k = 1.0, double initial_t = 1.0);

  double k() const { return initial_k_ + increment_ * static_cast<double>(k_steps_); }
  double t() const;
  Schedule schedule() const { return schedule_; }
  double threshold_a() const { return threshold_a_; }
  double increment() const { return increment_; }
  double initial_k() const { return initial_k_; }
  double initial_t() const { return initial_t_; }

  /// Applies one schedule update given the current number of invalid
  /// (relaxed) cycles. Adaptive schedules fire only when invalid < a.
  void update(double invalid_cycles);

 private:
  Schedule schedule_ = Schedule::none;
  double threshold_a_ = 100.0;
  double increment_ = kDefaultIncrement;
  double initial_k_ = 1.0;
  double initial_t_ = 1.0;
  std::size_t k_steps_ = 0;
  std::size_t t_steps_ = 0;
};

enum class Granularity { per_iteration, per_epoch };

struct MeanFieldConfig {
  std::size_t iterations = 20;
  CoolingState cooling{Schedule::adaptive_phi};
  Granularity granularity = Granularity::per_iteration;
  double rounding_threshold = 0.5;
  /// Worker count for the per-edge update; results do not depend on it.
  std::size_t threads = 1;
};

struct TrajectoryRecord {
  std::size_t iteration = 0;
  CycleStats stats;
  double k = 1.0;
  double t = 1.0;
  double objective_linear = 0.0;
  double objective_cubic = 0.0;
};

using Trajectory = std::vector<TrajectoryRecord>;

struct MeanFieldResult {
  EdgeMarginals marginals;
  Trajectory trajectory;
  CoolingState cooling;
};

/// Cooling function: 1 - (1-q)^k for q >= 0.5, q^k otherwise.
double phi(double q, double k);

/// Negative log-probability of the label under the edge probability p.
double unary_potential(double p, int label);

/// Temperature-scaled two-way softmax with max subtraction.
std::array<double, 2> softmax_with_temperature(std::array<double, 2> exponents,
                                               double t);

/// One synchronous (Jacobi) update of every edge from the previous snapshot.
/// Unaries are taken from graph.probs(); the neighbor marginals inside the
/// clique terms pass through phi(., k), and the softmax uses temperature t.
/// Throws std::overflow_error("potential overflow") on non-finite exponents.
EdgeMarginals meanfield_step(std::span<const double> marginals,
                             const EdgeGraph& graph, const TriangleSet& triangles,
                             const PotentialParams& params,
                             const CoolingState& cooling, std::size_t threads = 1);

/// Iterates meanfield_step, recording cycle statistics and objectives after
/// every iteration. In per-iteration granularity the cooling schedule is
/// updated from invalid_relaxed after each step; per-epoch leaves it to the
/// caller.
MeanFieldResult run_meanfield(const EdgeGraph& graph, std::span<const double> initial,
                              const TriangleSet& triangles,
                              const PotentialParams& params,
                              const MeanFieldConfig& config);

// ---------------------------------------------------------------------------
// Cost fitting

struct FitInstance {
  const EdgeGraph* graph = nullptr;
  const TriangleSet* triangles = nullptr;
  EdgeMarginals initial;
  Labeling truth;
};

struct FitOptions {
  std::size_t iterations = 20;
  double learning_rate = 1.0;
  double perturbation = 1e-3;
  PotentialParams initial;
};

struct FitResult {
  PotentialParams params;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::size_t accepted_steps = 0;
  /// Loss after every accepted step, starting with the initial loss.
  std::vector<double> loss_history;
};

enum class GammaParam { jjj, jcc, ccc, max };

inline constexpr std::array<GammaParam, 4> kGammaParams{
    GammaParam::jjj, GammaParam::jcc, GammaParam::ccc, GammaParam::max};

double& gamma_ref(PotentialParams& params, GammaParam which);

/// Mean binary cross-entropy of the final marginals against the truths,
/// averaged over every edge of every instance.
double fit_loss(std::span<const FitInstance> instances, const PotentialParams& params,
                const MeanFieldConfig& config);

/// Central finite difference of fit_loss with respect to one gamma.
double fit_gradient(std::span<const FitInstance> instances,
                    const PotentialParams& params, const MeanFieldConfig& config,
                    GammaParam which, double h);

/// Gradient descent on the gamma costs with finite-difference gradients.
/// A step is accepted only if the loss decreases; a rejected step halves the
/// learning rate. Every attempt consumes one iteration.
FitResult fit_costs(std::span<const FitInstance> instances,
                    const MeanFieldConfig& config, const FitOptions& options);

}  // namespace amc
