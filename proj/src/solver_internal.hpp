#pragma once

#include <span>
#include <vector>

#include "emt/solvers.hpp"

namespace emt::detail {

// Best cost and genome found so far for each task.
class BestTracker {
 public:
  explicit BestTracker(std::size_t num_tasks)
      : costs_(num_tasks, kUnevaluated), genomes_(num_tasks) {}

  void offer(std::span<const int> genome, std::size_t task, double cost) {
    if (cost < costs_[task]) {
      costs_[task] = cost;
      genomes_[task].assign(genome.begin(), genome.end());
    }
  }

  void offer_all(const Individual& ind) {
    for (std::size_t k = 0; k < costs_.size(); ++k) offer(ind.genome, k, ind.factorial_costs[k]);
  }

  const std::vector<double>& costs() const { return costs_; }

  void finish(RunResult& out) const {
    out.best_costs = costs_;
    out.best_genomes = genomes_;
  }

 private:
  std::vector<double> costs_;
  std::vector<Genome> genomes_;
};

// Offspring evaluated on one task only.
inline Individual make_child(Genome genome, std::size_t skill, double cost, std::size_t num_tasks,
                             std::uint64_t id) {
  Individual c;
  c.genome = std::move(genome);
  c.factorial_costs.assign(num_tasks, kUnevaluated);
  c.factorial_costs[skill] = cost;
  c.factorial_ranks.assign(num_tasks, 0);
  c.skill_factor = skill;
  c.id = id;
  return c;
}

}  // namespace emt::detail
