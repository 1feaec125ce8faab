#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "emt/mfo.hpp"
#include "emt/rng.hpp"

namespace emt {

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// rows x cols toroidal arrangement of individuals, row-major.
class CellularGrid {
 public:
  // Throws ConfigError when rows or cols < 3 or rows*cols != cells.size().
  CellularGrid(std::size_t rows, std::size_t cols, std::vector<Individual> cells);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return cells_.size(); }

  Individual& at(std::size_t index) { return cells_[index]; }
  const Individual& at(std::size_t index) const { return cells_[index]; }
  Individual& at(Cell c) { return cells_[index_of(c)]; }
  const Individual& at(Cell c) const { return cells_[index_of(c)]; }
  std::size_t index_of(Cell c) const { return c.row * cols_ + c.col; }
  Cell cell_of(std::size_t index) const { return {index / cols_, index % cols_}; }

  const std::vector<Individual>& cells() const { return cells_; }
  std::vector<Individual> release() && { return std::move(cells_); }

  // Skill factor (0-based) of every cell, row-major.
  std::vector<std::size_t> skill_layout() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Individual> cells_;
};

// The 8 surrounding cells with wrap-around, in reading order
// (NW, N, NE, W, E, SW, S, SE).
std::array<Cell, 8> moore_neighbors(std::size_t rows, std::size_t cols, Cell cell);
inline std::array<Cell, 8> moore_neighbors(const CellularGrid& grid, Cell cell) {
  return moore_neighbors(grid.rows(), grid.cols(), cell);
}

// K x K counts; entry (donor, receiver) counts crossover children that won
// their receiver's cell with genetic material from a donor of that skill.
class TransferMatrix {
 public:
  TransferMatrix() = default;
  explicit TransferMatrix(std::size_t num_tasks, std::uint64_t initial = 0)
      : k_(num_tasks), counts_(num_tasks * num_tasks, initial) {}

  std::size_t num_tasks() const { return k_; }
  std::uint64_t at(std::size_t donor, std::size_t receiver) const { return counts_[donor * k_ + receiver]; }
  void record(std::size_t donor, std::size_t receiver) { ++counts_[donor * k_ + receiver]; }
  std::uint64_t row_sum(std::size_t donor) const;
  std::uint64_t total() const;
  std::span<const std::uint64_t> raw() const { return counts_; }
  friend bool operator==(const TransferMatrix&, const TransferMatrix&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<std::uint64_t> counts_;
};

// Roulette probabilities for the next placement after a `previous`-skill
// individual: g[previous][k] normalized over skills with remaining[k] > 0.
// Falls back to uniform over available skills when those weights are all zero.
std::vector<double> roulette_probabilities(const TransferMatrix& g, std::size_t previous,
                                           std::span<const std::size_t> remaining);

// Re-places every individual of `grid`: a uniform first pick, then for each
// following position either (p_same_task, when the previous skill still has
// unplaced members) a member of the previous skill, or a skill drawn with
// roulette_probabilities; the member is uniform among the unplaced ones of
// that skill. Every placed individual gets a fresh uniform mutation kind.
CellularGrid rebuild_grid(CellularGrid grid, const TransferMatrix& g, double p_same_task, Rng& rng);

// Mean over cells of (frequency of the most common skill in the 3x3 toroidal
// Moore block) / 9.
double modal_neighborhood_agreement(std::span<const std::size_t> skills, std::size_t rows,
                                    std::size_t cols);

}  // namespace emt
