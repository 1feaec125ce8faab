#include "emt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace emt {

FriedmanResult friedman(const std::vector<std::vector<double>>& table) {
  const auto N = table.size();
  if (N < 2) throw std::invalid_argument("friedman: need at least 2 tasks");
  const auto S = table.front().size();
  if (S < 2) throw std::invalid_argument("friedman: need at least 2 solvers");
  for (const auto& row : table)
    if (row.size() != S) throw std::invalid_argument("friedman: ragged table");

  FriedmanResult out;
  out.mean_ranks.assign(S, 0.0);
  std::vector<std::size_t> order(S);
  for (const auto& row : table) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    for (std::size_t i = 0; i < S;) {
      std::size_t j = i;
      while (j + 1 < S && row[order[j + 1]] == row[order[i]]) ++j;
      const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
      for (std::size_t t = i; t <= j; ++t) out.mean_ranks[order[t]] += avg;
      i = j + 1;
    }
  }
  double sum_sq = 0.0;
  for (auto& r : out.mean_ranks) {
    r /= static_cast<double>(N);
    sum_sq += r * r;
  }
  const double s = static_cast<double>(S);
  out.statistic = 12.0 * static_cast<double>(N) / (s * (s + 1.0)) * (sum_sq - s * (s + 1.0) * (s + 1.0) / 4.0);
  return out;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

std::vector<HolmRow> holm_posthoc(const std::vector<double>& mean_ranks, std::size_t num_tasks,
                                  std::size_t control) {
  const auto S = mean_ranks.size();
  if (S < 2) throw std::invalid_argument("holm_posthoc: need at least 2 solvers");
  if (num_tasks < 2) throw std::invalid_argument("holm_posthoc: need at least 2 tasks");
  if (control >= S) throw std::invalid_argument("holm_posthoc: control solver out of range");

  const double s = static_cast<double>(S);
  const double se = std::sqrt(s * (s + 1.0) / (6.0 * static_cast<double>(num_tasks)));
  std::vector<HolmRow> rows;
  for (std::size_t j = 0; j < S; ++j) {
    if (j == control) continue;
    HolmRow r;
    r.solver = j;
    r.z = (mean_ranks[j] - mean_ranks[control]) / se;
    r.p_unadjusted = std::min(1.0, 2.0 * normal_sf(std::fabs(r.z)));
    rows.push_back(r);
  }

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].p_unadjusted < rows[b].p_unadjusted; });
  const auto m = rows.size();
  double running = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& r = rows[order[i]];
    running = std::max(running, std::min(1.0, static_cast<double>(m - i) * r.p_unadjusted));
    r.p_adjusted = running;
  }
  return rows;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace emt
