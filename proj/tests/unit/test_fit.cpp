#include <gtest/gtest.h>

#include <random>

#include "amc/meanfield.hpp"
#include "amc/synth.hpp"
#include "oracles.hpp"

using namespace amc;

namespace {

struct FitSet {
  std::vector<SynthInstance> synth;
  std::vector<TriangleSet> triangles;
  std::vector<FitInstance> instances;
};

FitSet make_set(std::size_t count, std::uint64_t seed) {
  FitSet set;
  set.synth.reserve(count);
  set.triangles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SynthOptions options;
    options.height = options.width = 8;
    options.regions = 3;
    options.seed = seed + i;
    set.synth.push_back(make_planted_instance(options));
    set.triangles.push_back(enumerate_triangles(set.synth.back().graph));
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto& g = set.synth[i].graph;
    set.instances.push_back({&g, &set.triangles[i], {g.probs().begin(), g.probs().end()},
                             set.synth[i].truth});
  }
  return set;
}

MeanFieldConfig short_config() {
  MeanFieldConfig config;
  config.iterations = 5;
  return config;
}

}  // namespace

TEST(FitCosts, ZeroIterationsReturnsInitial) {
  const auto set = make_set(2, 40);
  FitOptions options;
  options.iterations = 0;
  options.initial.gamma_max = 4;
  const auto result = fit_costs(set.instances, short_config(), options);
  EXPECT_EQ(result.params, options.initial);
  EXPECT_EQ(result.accepted_steps, 0u);
  EXPECT_DOUBLE_EQ(result.final_loss, result.initial_loss);
}

TEST(FitCosts, EmptyInstanceSetThrows) {
  EXPECT_THROW(fit_costs({}, short_config(), FitOptions{}), std::invalid_argument);
}

TEST(FitCosts, LossNeverIncreases) {
  const auto set = make_set(3, 50);
  FitOptions options;
  options.iterations = 8;
  const auto result = fit_costs(set.instances, short_config(), options);
  EXPECT_LE(result.final_loss, result.initial_loss);
  ASSERT_EQ(result.loss_history.size(), result.accepted_steps + 1);
  for (std::size_t i = 1; i < result.loss_history.size(); ++i) {
    EXPECT_LT(result.loss_history[i], result.loss_history[i - 1]);
  }
  EXPECT_NEAR(fit_loss(set.instances, result.params, short_config()), result.final_loss, 1e-12);
}

TEST(FitCosts, FittedGammaMaxExceedsValidCosts) {
  const auto set = make_set(4, 60);
  FitOptions options;
  options.iterations = 12;
  options.initial.gamma_max = 2;
  const auto result = fit_costs(set.instances, short_config(), options);
  EXPECT_LT(result.final_loss, result.initial_loss);
  EXPECT_GT(result.params.gamma_max, result.params.max_valid());
}

TEST(FitCosts, PerEpochGranularityRuns) {
  const auto set = make_set(2, 70);
  MeanFieldConfig config = short_config();
  config.granularity = Granularity::per_epoch;
  FitOptions options;
  options.iterations = 4;
  const auto result = fit_costs(set.instances, config, options);
  EXPECT_LE(result.final_loss, result.initial_loss);
}

TEST(FitGradient, SignMatchesWiderSecant) {
  std::size_t agree = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto set = make_set(1, 100 + seed);
    PotentialParams params;
    params.gamma_max = 1.0 + static_cast<double>(seed);
    const auto config = short_config();
    const double h = 1e-3;
    const double g = fit_gradient(set.instances, params, config, GammaParam::max, h);
    PotentialParams lo = params, hi = params;
    lo.gamma_max -= 10 * h;
    hi.gamma_max += 10 * h;
    const double secant = (fit_loss(set.instances, hi, config) - fit_loss(set.instances, lo, config)) /
                          (20 * h);
    if (std::abs(secant) < 1e-9) continue;
    ++total;
    if ((g > 0) == (secant > 0)) ++agree;
  }
  ASSERT_GT(total, 0u);
  EXPECT_EQ(agree, total);
}

TEST(GammaRef, AddressesEachField) {
  PotentialParams params;
  gamma_ref(params, GammaParam::jjj) = 1;
  gamma_ref(params, GammaParam::jcc) = 2;
  gamma_ref(params, GammaParam::ccc) = 3;
  gamma_ref(params, GammaParam::max) = 4;
  EXPECT_EQ(params, (PotentialParams{1, 2, 3, 4, 1}));
  EXPECT_FALSE(params.gamma_max_suspicious());
  params.gamma_max = 2.5;
  EXPECT_TRUE(params.gamma_max_suspicious());
}
