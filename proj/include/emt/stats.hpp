#pragma once

#include <cstddef>
#include <vector>

namespace emt {

struct FriedmanResult {
  std::vector<double> mean_ranks;  // per solver (column)
  double statistic = 0.0;          // chi-square with S-1 degrees of freedom
};

// table[task][solver] holds the value to rank; lower is better and ties get
// average ranks. Throws std::invalid_argument on a ragged table or fewer
// than 2 tasks or 2 solvers.
FriedmanResult friedman(const std::vector<std::vector<double>>& table);

struct HolmRow {
  std::size_t solver = 0;
  double z = 0.0;
  double p_unadjusted = 1.0;
  double p_adjusted = 1.0;
};

// One row per challenger (every solver except `control`), in solver order.
// Throws std::invalid_argument when num_tasks < 2, fewer than 2 solvers, or
// control is out of range.
std::vector<HolmRow> holm_posthoc(const std::vector<double>& mean_ranks, std::size_t num_tasks,
                                  std::size_t control);

// P(Z > z) for a standard normal Z.
double normal_sf(double z);

double mean(const std::vector<double>& v);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(const std::vector<double>& v);

}  // namespace emt
