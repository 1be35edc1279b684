#include "eds/eval.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "eds/errors.h"

namespace eds {
namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw ParameterError("label vectors differ in length: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  if (a.size() < 2) throw ParameterError("ARI needs at least two elements");

  std::map<std::pair<int, int>, long long> cells;
  std::map<int, long long> rows;
  std::map<int, long long> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++cells[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  double index = 0.0;
  for (const auto& [key, n] : cells) index += choose2(static_cast<double>(n));
  double sum_rows = 0.0;
  for (const auto& [key, n] : rows) sum_rows += choose2(static_cast<double>(n));
  double sum_cols = 0.0;
  for (const auto& [key, n] : cols) sum_cols += choose2(static_cast<double>(n));

  const double expected = sum_rows * sum_cols / choose2(static_cast<double>(a.size()));
  const double maximum = 0.5 * (sum_rows + sum_cols);
  // Zero only when both partitions are all-one-block or both all-singletons.
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

std::vector<double> rank_table(const ScoreTable& scores) {
  if (scores.empty()) throw ParameterError("score table is empty");
  const std::size_t k = scores.front().size();
  std::vector<double> total(k, 0.0);
  std::vector<std::size_t> order(k);
  for (const auto& row : scores) {
    if (row.size() != k) throw ParameterError("score table rows differ in length");
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return row[x] > row[y]; });
    for (std::size_t i = 0; i < k;) {
      std::size_t j = i;
      while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
      double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t t = i; t <= j; ++t) total[order[t]] += shared;
      i = j + 1;
    }
  }
  for (auto& t : total) t /= static_cast<double>(scores.size());
  return total;
}

FriedmanResult friedman(std::span<const double> avg_ranks, int n_datasets) {
  const int k = static_cast<int>(avg_ranks.size());
  if (n_datasets < 2 || k < 2) throw ParameterError("Friedman test needs N >= 2 and k >= 2");
  const double n = n_datasets;
  double squares = 0.0;
  for (double r : avg_ranks) squares += r * r;
  FriedmanResult out;
  out.chi2 = 12.0 * n / (k * (k + 1.0)) * (squares - k * (k + 1.0) * (k + 1.0) / 4.0);
  // Rounded input ranks can push a zero statistic slightly negative.
  if (out.chi2 < 0.0 && out.chi2 > -1e-9) out.chi2 = 0.0;
  const double denom = n * (k - 1) - out.chi2;
  if (std::abs(denom) < 1e-12) {
    throw ParameterError("Friedman statistic is degenerate (chi2 = N(k-1))");
  }
  out.f_f = (n - 1.0) * out.chi2 / denom;
  out.df1 = k - 1;
  out.df2 = (n_datasets - 1) * (k - 1);
  return out;
}

double bonferroni_dunn_q(int k, double alpha) {
  static constexpr std::array<double, 9> q05 = {1.960, 2.241, 2.394, 2.498, 2.576,
                                                2.638, 2.690, 2.724, 2.773};
  static constexpr std::array<double, 9> q10 = {1.645, 1.960, 2.128, 2.241, 2.326,
                                                2.394, 2.450, 2.498, 2.539};
  if (k >= 2 && k <= 10) {
    if (std::abs(alpha - 0.05) < 1e-12) return q05[k - 2];
    if (std::abs(alpha - 0.10) < 1e-12) return q10[k - 2];
  }
  throw ParameterError("Bonferroni-Dunn critical values are tabulated for k in [2, 10] and "
                       "alpha in {0.05, 0.10}; got k=" + std::to_string(k) +
                       ", alpha=" + std::to_string(alpha));
}

double bonferroni_dunn_cd(int k, int n_datasets, double alpha) {
  if (n_datasets < 1) throw ParameterError("N must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  return bonferroni_dunn_q(k, alpha) * std::sqrt(k * (k + 1.0) / (6.0 * n_datasets));
}

EvalReport make_report(std::vector<std::string> datasets, std::vector<std::string> techniques,
                       ScoreTable ari_table, double alpha) {
  EvalReport r;
  if (ari_table.size() != datasets.size()) {
    throw ParameterError("dataset names do not match table rows");
  }
  for (const auto& row : ari_table) {
    if (row.size() != techniques.size()) {
      throw ParameterError("technique names do not match table columns");
    }
  }
  r.datasets = std::move(datasets);
  r.techniques = std::move(techniques);
  r.ari_table = std::move(ari_table);
  r.alpha = alpha;
  r.n_datasets = static_cast<int>(r.ari_table.size());
  r.n_techniques = static_cast<int>(r.techniques.size());
  r.avg_ranks = rank_table(r.ari_table);
  r.friedman = friedman(r.avg_ranks, r.n_datasets);
  r.critical_difference = bonferroni_dunn_cd(r.n_techniques, r.n_datasets, alpha);
  return r;
}

namespace {

const std::vector<std::string> kTechniques = {
    "K-means", "Fuzzy c-means", "HDBSCAN*+DBCV", "Chameleon",
    "Expectation Maximization", "Modularity", "Edge Domination"};

ScoreTable transpose(const ScoreTable& by_technique) {
  ScoreTable out(by_technique.front().size(), std::vector<double>(by_technique.size()));
  for (std::size_t t = 0; t < by_technique.size(); ++t) {
    for (std::size_t d = 0; d < by_technique[t].size(); ++d) out[d][t] = by_technique[t][d];
  }
  return out;
}

}  // namespace

const PublishedTable& published_artificial_results() {
  static const PublishedTable table{
      {"Banana", "Highleyman", "Lithuanian", "Spirals"},
      kTechniques,
      transpose({
          {.2429, .2617, -.0016, -.0020},
          {.2442, .3201, -.0017, -.0019},
          {.4714, .2085, .7024, .2507},
          {.9215, .4348, .9343, .0119},
          {.3304, .7977, -.0015, -.0020},
          {.3510, .5033, .4259, 1.0000},
          {.9408, .7164, .9538, 1.0000},
      })};
  return table;
}

const PublishedTable& published_real_results() {
  static const PublishedTable table{
      {"Breast cancer", "Car evaluation", "Credit approval", "Contraceptive method", "Glass",
       "Ionosphere", "Iris", "Vowel", "Wine", "Seeds"},
      kTechniques,
      transpose({
          {.7302, .0294, .2389, .0215, .1610, .1776, .6540, .1736, .8582, .7049},
          {.7305, .0307, .3725, .0242, .1632, .1727, .7287, .0892, .8498, .7266},
          {.2556, .1313, .0794, .0236, .2575, .7030, .5657, .0814, .3385, .4303},
          {.7192, .1496, .1653, .0253, .2918, .6767, .6844, .1949, .8249, .7436},
          {.6955, .0367, .1987, .0112, .1571, .1547, .9222, .1541, .9472, .6671},
          {.4474, .1872, .1734, .0329, .2118, .0708, .9038, .2505, .8858, .8125},
          {.7930, .1880, .4890, .0433, .2377, .3057, .9222, .2259, .9488, .8377},
      })};
  return table;
}

}  // namespace eds
