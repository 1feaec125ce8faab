#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "emt/genome.hpp"
#include "emt/operators.hpp"
#include "emt/problems.hpp"
#include "emt/rng.hpp"

namespace emt {

inline constexpr double kUnevaluated = std::numeric_limits<double>::infinity();

struct Individual {
  Genome genome;
  std::vector<double> factorial_costs;  // +inf for tasks it was not evaluated on
  std::vector<int> factorial_ranks;     // 1-based
  double scalar_fitness = 0.0;
  std::size_t skill_factor = 0;         // 0-based task index
  MutationKind mutation_kind = MutationKind::TwoOpt;
  std::uint64_t id = 0;                 // unique within a run; survives grid moves

  double skill_cost() const { return factorial_costs[skill_factor]; }
};

// Rank 1 = lowest cost; ties by lower index; +inf after every finite cost.
// Throws std::invalid_argument on empty input.
std::vector<int> compute_factorial_ranks(std::span<const double> costs);

// Writes factorial_ranks[task] for every individual.
void compute_factorial_ranks(std::vector<Individual>& population, std::size_t task);

// 1 / min(ranks).
double scalar_fitness(std::span<const int> ranks);

// 0-based argmin of ranks, ties to the lowest task index.
std::size_t skill_factor(std::span<const int> ranks);

// Recomputes ranks for all tasks, then scalar fitness and skill factor using
// only the tasks each individual has a finite cost for.
void refresh_mfo_fields(std::vector<Individual>& population, std::size_t num_tasks);

// Counts every objective evaluation against a global budget. Not thread-safe;
// each solver run owns one.
class Evaluator {
 public:
  Evaluator(std::span<const TaskDefinition> tasks, std::uint64_t budget);

  std::size_t num_tasks() const { return tasks_.size(); }
  std::size_t max_dimension() const { return max_dim_; }
  std::span<const TaskDefinition> tasks() const { return tasks_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t remaining() const { return used_ >= budget_ ? 0 : budget_ - used_; }

  double evaluate(std::span<const int> genome, std::size_t task);

 private:
  std::span<const TaskDefinition> tasks_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  std::size_t max_dim_ = 0;
  Permutation scratch_;
};

Genome random_genome(std::size_t length, Rng& rng);

// P random genomes evaluated on every task (K*P evaluations), with ranks,
// scalar fitness and skill factor set and a uniformly drawn mutation kind.
// With `balanced`, skill factors are reassigned so that each task owns
// floor(P/K) or ceil(P/K) individuals: tasks take turns claiming their
// best-ranked unclaimed individual. Throws std::invalid_argument if P < K.
std::vector<Individual> init_population(std::size_t population_size, Evaluator& evaluator, Rng& rng,
                                        bool balanced);

}  // namespace emt
