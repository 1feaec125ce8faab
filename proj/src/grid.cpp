#include "emt/grid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "emt/errors.hpp"

namespace emt {

CellularGrid::CellularGrid(std::size_t rows, std::size_t cols, std::vector<Individual> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows_ < 3 || cols_ < 3)
    throw ConfigError("cellular grid must be at least 3x3, got " + std::to_string(rows_) + "x" +
                      std::to_string(cols_));
  if (rows_ * cols_ != cells_.size())
    throw ConfigError("grid " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                      " does not match population size " + std::to_string(cells_.size()));
}

std::vector<std::size_t> CellularGrid::skill_layout() const {
  std::vector<std::size_t> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) out.push_back(c.skill_factor);
  return out;
}

std::array<Cell, 8> moore_neighbors(std::size_t rows, std::size_t cols, Cell cell) {
  std::array<Cell, 8> out;
  std::size_t k = 0;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      out[k++] = {(cell.row + rows + dr) % rows, (cell.col + cols + dc) % cols};
    }
  return out;
}

std::uint64_t TransferMatrix::row_sum(std::size_t donor) const {
  return std::accumulate(counts_.begin() + donor * k_, counts_.begin() + (donor + 1) * k_,
                         std::uint64_t{0});
}

std::uint64_t TransferMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<double> roulette_probabilities(const TransferMatrix& g, std::size_t previous,
                                           std::span<const std::size_t> remaining) {
  const auto K = g.num_tasks();
  std::vector<double> p(K, 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    if (remaining[k] == 0) continue;
    p[k] = static_cast<double>(g.at(previous, k));
    sum += p[k];
  }
  if (sum <= 0.0) {
    for (std::size_t k = 0; k < K; ++k) {
      p[k] = remaining[k] > 0 ? 1.0 : 0.0;
      sum += p[k];
    }
  }
  if (sum > 0.0)
    for (auto& v : p) v /= sum;
  return p;
}

CellularGrid rebuild_grid(CellularGrid grid, const TransferMatrix& g, double p_same_task, Rng& rng) {
  const auto rows = grid.rows();
  const auto cols = grid.cols();
  const auto K = g.num_tasks();
  auto old = std::move(grid).release();

  // Unplaced individuals bucketed by skill; removal swaps with the back.
  std::vector<std::vector<std::size_t>> pool(K);
  for (std::size_t i = 0; i < old.size(); ++i) pool.at(old[i].skill_factor).push_back(i);
  std::vector<std::size_t> remaining(K);
  for (std::size_t k = 0; k < K; ++k) remaining[k] = pool[k].size();

  auto take = [&](std::size_t skill) {
    auto& bucket = pool[skill];
    const auto pos = uniform_index(rng, 0, bucket.size() - 1);
    const auto idx = bucket[pos];
    bucket[pos] = bucket.back();
    bucket.pop_back();
    --remaining[skill];
    return idx;
  };

  std::vector<Individual> placed;
  placed.reserve(old.size());
  auto place = [&](std::size_t idx) {
    Individual ind = std::move(old[idx]);
    ind.mutation_kind = coin(rng) ? MutationKind::Insertion : MutationKind::TwoOpt;
    placed.push_back(std::move(ind));
  };

  {
    // Uniform first pick over the whole population.
    const auto first = uniform_index(rng, 0, old.size() - 1);
    auto& bucket = pool[old[first].skill_factor];
    auto it = std::find(bucket.begin(), bucket.end(), first);
    *it = bucket.back();
    bucket.pop_back();
    --remaining[old[first].skill_factor];
    place(first);
  }

  while (placed.size() < old.size()) {
    const auto prev = placed.back().skill_factor;
    std::size_t skill;
    if (uniform01(rng) < p_same_task && remaining[prev] > 0) {
      skill = prev;
    } else {
      const auto probs = roulette_probabilities(g, prev, remaining);
      double r = uniform01(rng);
      skill = K;
      std::size_t last_available = K;
      for (std::size_t k = 0; k < K; ++k) {
        if (remaining[k] == 0) continue;
        last_available = k;
        if (r < probs[k]) {
          skill = k;
          break;
        }
        r -= probs[k];
      }
      if (skill == K) skill = last_available;  // rounding residue
    }
    place(take(skill));
  }
  return CellularGrid(rows, cols, std::move(placed));
}

double modal_neighborhood_agreement(std::span<const std::size_t> skills, std::size_t rows,
                                    std::size_t cols) {
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::map<std::size_t, int> freq;
      ++freq[skills[r * cols + c]];
      for (const auto& n : moore_neighbors(rows, cols, {r, c})) ++freq[skills[n.row * cols + n.col]];
      int mode = 0;
      for (const auto& [s, f] : freq) mode = std::max(mode, f);
      total += mode / 9.0;
    }
  return total / static_cast<double>(rows * cols);
}

}  // namespace emt
