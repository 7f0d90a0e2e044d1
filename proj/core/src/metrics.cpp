#include "amc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace amc {

namespace {

struct Contingency {
  std::map<std::uint32_t, double> rows;
  std::map<std::uint32_t, double> cols;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> cells;
  double n = 0.0;
};

Contingency contingency(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("partition lengths differ");
  Contingency table;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table.rows[a[i]] += 1.0;
    table.cols[b[i]] += 1.0;
    table.cells[{a[i], b[i]}] += 1.0;
  }
  table.n = static_cast<double>(a.size());
  return table;
}

double pairs(double count) { return count * (count - 1.0) / 2.0; }

}  // namespace

double rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  const auto table = contingency(a, b);
  if (a.size() < 2) throw std::invalid_argument("rand index needs at least two nodes");
  double together_a = 0.0;
  double together_b = 0.0;
  double together_both = 0.0;
  for (const auto& [id, count] : table.rows) together_a += pairs(count);
  for (const auto& [id, count] : table.cols) together_b += pairs(count);
  for (const auto& [key, count] : table.cells) together_both += pairs(count);
  const double disagreements = together_a + together_b - 2.0 * together_both;
  return 1.0 - disagreements / pairs(table.n);
}

double variation_of_information(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b) {
  const auto table = contingency(a, b);
  if (table.n == 0.0) return 0.0;
  double vi = 0.0;
  // VI = -sum_ij p_ij [log(p_ij / p_i) + log(p_ij / p_j)]
  for (const auto& [key, count] : table.cells) {
    const double p = count / table.n;
    const double row = table.rows.at(key.first);
    const double col = table.cols.at(key.second);
    vi -= p * (std::log(count / row) + std::log(count / col));
  }
  return std::max(vi, 0.0);
}

PartitionScore score_partitions(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b) {
  return {rand_index(a, b), variation_of_information(a, b)};
}

EdgePrf edge_prf(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("labeling lengths differ");
  double true_positive = 0.0;
  double predicted_cuts = 0.0;
  double true_cuts = 0.0;
  for (std::size_t e = 0; e < predicted.size(); ++e) {
    const bool p = predicted[e] != 0;
    const bool t = truth[e] != 0;
    predicted_cuts += p;
    true_cuts += t;
    true_positive += p && t;
  }
  EdgePrf prf;
  prf.precision = predicted_cuts == 0.0 ? 1.0 : true_positive / predicted_cuts;
  prf.recall = true_cuts == 0.0 ? 1.0 : true_positive / true_cuts;
  const double sum = prf.precision + prf.recall;
  prf.f_measure = sum == 0.0 ? 0.0 : 2.0 * prf.precision * prf.recall / sum;
  return prf;
}

}  // namespace amc
