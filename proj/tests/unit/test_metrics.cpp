#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "amc/metrics.hpp"
#include "oracles.hpp"

using namespace amc;

TEST(RandIndex, Examples) {
  EXPECT_DOUBLE_EQ(rand_index(Partition{0, 1, 1, 2}, Partition{0, 1, 1, 2}), 1.0);
  EXPECT_DOUBLE_EQ(rand_index(Partition{0, 1, 2}, Partition{0, 0, 0}), 0.0);
  // Pairs ab, ad and bd agree; ac, bc and cd do not.
  const Partition two_pairs{0, 0, 1, 1}, three_one{0, 0, 0, 1};
  EXPECT_DOUBLE_EQ(oracle::pair_count_rand(two_pairs, three_one), 0.5);
  EXPECT_DOUBLE_EQ(rand_index(two_pairs, three_one), 0.5);
  EXPECT_THROW(rand_index(Partition{0, 1}, Partition{0}), std::invalid_argument);
  EXPECT_THROW(rand_index(Partition{0}, Partition{0}), std::invalid_argument);
}

TEST(VariationOfInformation, Examples) {
  EXPECT_DOUBLE_EQ(variation_of_information(Partition{0, 1, 1}, Partition{5, 2, 2}), 0.0);
  EXPECT_NEAR(variation_of_information(Partition{0, 1, 2}, Partition{0, 0, 0}), std::log(3.0), 1e-12);
  EXPECT_NEAR(variation_of_information(Partition{0, 1, 2}, Partition{0, 0, 0}), 1.0986, 1e-4);
  EXPECT_THROW(variation_of_information(Partition{0, 1}, Partition{0}), std::invalid_argument);
}

TEST(PartitionMetrics, AgreeWithOracles) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 30;
    const auto a = oracle::random_partition(n, 1 + trial % 5, rng);
    const auto b = oracle::random_partition(n, 1 + trial % 7, rng);
    EXPECT_NEAR(rand_index(a, b), oracle::pair_count_rand(a, b), 1e-12);
    EXPECT_NEAR(variation_of_information(a, b), oracle::conditional_entropy_vi(a, b), 1e-12);
    EXPECT_NEAR(variation_of_information(a, b), variation_of_information(b, a), 1e-12);
    const double vi = variation_of_information(a, b);
    EXPECT_GE(vi, -1e-12);
    EXPECT_LE(vi, std::log(static_cast<double>(n)) + 1e-12);
    const auto s = score_partitions(a, b);
    EXPECT_DOUBLE_EQ(s.rand_index, rand_index(a, b));
    EXPECT_DOUBLE_EQ(s.variation_of_information, vi);
  }
}

TEST(PartitionMetrics, RelabelingInvariant) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_partition(12, 4, rng);
    const auto b = oracle::random_partition(12, 3, rng);
    auto relabeled = a;
    for (auto& x : relabeled) x = 100 - 7 * x;
    EXPECT_NEAR(rand_index(relabeled, b), rand_index(a, b), 1e-12);
    EXPECT_NEAR(variation_of_information(relabeled, b), variation_of_information(a, b), 1e-12);
    EXPECT_DOUBLE_EQ(rand_index(a, relabeled), 1.0);
    EXPECT_NEAR(variation_of_information(a, relabeled), 0.0, 1e-12);
  }
}

TEST(PartitionMetrics, TriangleInequality) {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto a = oracle::random_partition(n, 3, rng);
    const auto b = oracle::random_partition(n, 3, rng);
    const auto c = oracle::random_partition(n, 3, rng);
    EXPECT_LE(variation_of_information(a, c),
              variation_of_information(a, b) + variation_of_information(b, c) + 1e-12);
  }
  // Exhaustive over all label vectors with n = 4 and up to 4 labels.
  std::vector<Partition> all;
  for (std::uint32_t code = 0; code < 256; ++code)
    all.push_back({code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3});
  for (std::size_t i = 0; i < all.size(); i += 5)
    for (std::size_t j = 0; j < all.size(); j += 3)
      for (std::size_t k = 0; k < all.size(); k += 7)
        EXPECT_LE(variation_of_information(all[i], all[k]),
                  variation_of_information(all[i], all[j]) +
                      variation_of_information(all[j], all[k]) + 1e-12);
}

TEST(EdgePrf, Examples) {
  auto s = edge_prf(Labeling{1, 0, 1}, Labeling{1, 0, 1});
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f_measure, 1.0);
  s = edge_prf(Labeling{0, 0, 0}, Labeling{1, 0, 1});
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.0);
  EXPECT_DOUBLE_EQ(s.f_measure, 0.0);
  s = edge_prf(Labeling{1, 1, 0, 0}, Labeling{1, 0, 1, 0});
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f_measure, 0.5);
  s = edge_prf(Labeling{1, 0}, Labeling{0, 0});
  EXPECT_DOUBLE_EQ(s.precision, 0.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_THROW(edge_prf(Labeling{1}, Labeling{1, 0}), std::invalid_argument);
}
