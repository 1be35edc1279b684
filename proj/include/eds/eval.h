#pragma once

#include <span>
#include <string>
#include <vector>

namespace eds {

// Adjusted Rand Index from the contingency table. Throws ParameterError on
// length mismatch or fewer than two elements.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

// Rows are datasets, columns techniques.
using ScoreTable = std::vector<std::vector<double>>;

// Average rank per technique; rank 1 is the highest score in a row and ties
// share the mean of their ranks.
std::vector<double> rank_table(const ScoreTable& scores);

struct FriedmanResult {
  double chi2 = 0.0;
  double f_f = 0.0;
  int df1 = 0;
  int df2 = 0;
};

// Friedman chi-square and the Iman-Davenport F statistic from average ranks
// over n_datasets datasets.
FriedmanResult friedman(std::span<const double> avg_ranks, int n_datasets);

// Two-tailed Bonferroni-Dunn critical value q_alpha for k techniques
// (k - 1 comparisons against a control). Tabulated for 2 <= k <= 10 and
// alpha in {0.05, 0.10}.
double bonferroni_dunn_q(int k, double alpha);

// CD = q_alpha * sqrt(k (k + 1) / (6 N)).
double bonferroni_dunn_cd(int k, int n_datasets, double alpha);

struct EvalReport {
  std::vector<std::string> datasets;
  std::vector<std::string> techniques;
  ScoreTable ari_table;
  std::vector<double> avg_ranks;
  FriedmanResult friedman;
  double critical_difference = 0.0;
  double alpha = 0.05;
  int n_datasets = 0;
  int n_techniques = 0;
};

EvalReport make_report(std::vector<std::string> datasets, std::vector<std::string> techniques,
                       ScoreTable ari_table, double alpha = 0.05);

// Published ARI results of the seven compared techniques.
struct PublishedTable {
  std::vector<std::string> datasets;
  std::vector<std::string> techniques;
  ScoreTable ari;  // datasets x techniques
};

const PublishedTable& published_artificial_results();
const PublishedTable& published_real_results();

// Values reported alongside the real-dataset comparison.
inline constexpr double kPublishedFriedmanF = 4.88;
inline constexpr double kPublishedCriticalDifference = 3.33;

}  // namespace eds
