#include <gtest/gtest.h>

#include "amc/cycles.hpp"
#include "amc/synth.hpp"

using namespace amc;

TEST(Synth, DeterministicPerSeed) {
  SynthOptions options;
  options.height = options.width = 12;
  options.seed = 5;
  const auto a = make_planted_instance(options);
  const auto b = make_planted_instance(options);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_TRUE(std::equal(a.graph.probs().begin(), a.graph.probs().end(), b.graph.probs().begin()));
  options.seed = 6;
  const auto c = make_planted_instance(options);
  EXPECT_FALSE(std::equal(a.graph.probs().begin(), a.graph.probs().end(), c.graph.probs().begin()));
}

TEST(Synth, TruthIsAFeasibleDecomposition) {
  SynthOptions options;
  options.height = 16;
  options.width = 10;
  options.regions = 4;
  const auto inst = make_planted_instance(options);
  EXPECT_EQ(inst.graph.num_nodes(), 160u);
  EXPECT_TRUE(is_feasible(inst.graph, inst.truth));
  EXPECT_EQ(labeling_from_partition(inst.graph, inst.truth_partition), inst.truth);
}

TEST(Synth, ProbabilitiesFollowTheNoiseModel) {
  SynthOptions options;
  options.height = options.width = 16;
  options.noise = 0.1;
  options.margin = 0.3;
  const auto inst = make_planted_instance(options);
  for (std::size_t e = 0; e < inst.graph.num_edges(); ++e) {
    const double p = inst.graph.probs()[e];
    if (inst.truth[e]) {
      EXPECT_GE(p, 0.7 - 1e-12);
      EXPECT_LE(p, 0.9 + 1e-12);
    } else {
      EXPECT_GE(p, 0.1 - 1e-12);
      EXPECT_LE(p, 0.3 + 1e-12);
    }
  }
}

TEST(Synth, RejectsBadOptions) {
  SynthOptions options;
  options.regions = 0;
  EXPECT_THROW(make_planted_instance(options), std::invalid_argument);
  options = SynthOptions{};
  options.noise = -1;
  EXPECT_THROW(make_planted_instance(options), std::invalid_argument);
}
