#include "emt/mfo.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace emt {

std::vector<int> compute_factorial_ranks(std::span<const double> costs) {
  if (costs.empty()) throw std::invalid_argument("compute_factorial_ranks: empty population");
  std::vector<std::size_t> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  // stable_sort keeps lower indices first among equal costs; +inf compares last.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
  std::vector<int> ranks(costs.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r + 1);
  return ranks;
}

void compute_factorial_ranks(std::vector<Individual>& population, std::size_t task) {
  std::vector<double> costs;
  costs.reserve(population.size());
  for (const auto& ind : population) costs.push_back(ind.factorial_costs.at(task));
  const auto ranks = compute_factorial_ranks(costs);
  for (std::size_t i = 0; i < population.size(); ++i) {
    auto& fr = population[i].factorial_ranks;
    if (fr.size() <= task) fr.resize(population[i].factorial_costs.size(), 0);
    fr[task] = ranks[i];
  }
}

double scalar_fitness(std::span<const int> ranks) {
  return 1.0 / static_cast<double>(*std::min_element(ranks.begin(), ranks.end()));
}

std::size_t skill_factor(std::span<const int> ranks) {
  return static_cast<std::size_t>(std::min_element(ranks.begin(), ranks.end()) - ranks.begin());
}

void refresh_mfo_fields(std::vector<Individual>& population, std::size_t num_tasks) {
  for (std::size_t k = 0; k < num_tasks; ++k) compute_factorial_ranks(population, k);
  for (auto& ind : population) {
    int best = std::numeric_limits<int>::max();
    std::size_t skill = ind.skill_factor;
    for (std::size_t k = 0; k < num_tasks; ++k) {
      if (ind.factorial_costs[k] == kUnevaluated) continue;
      if (ind.factorial_ranks[k] < best) {
        best = ind.factorial_ranks[k];
        skill = k;
      }
    }
    if (best == std::numeric_limits<int>::max()) {
      // Never evaluated: fall back to the plain definition.
      ind.scalar_fitness = scalar_fitness(ind.factorial_ranks);
      ind.skill_factor = skill_factor(ind.factorial_ranks);
    } else {
      ind.scalar_fitness = 1.0 / best;
      ind.skill_factor = skill;
    }
  }
}

Evaluator::Evaluator(std::span<const TaskDefinition> tasks, std::uint64_t budget)
    : tasks_(tasks), budget_(budget) {
  if (tasks_.empty()) throw std::invalid_argument("Evaluator: no tasks");
  for (const auto& t : tasks_) max_dim_ = std::max(max_dim_, t.dimension());
  scratch_.reserve(max_dim_);
}

double Evaluator::evaluate(std::span<const int> genome, std::size_t task) {
  const auto& t = tasks_[task];
  decode_into(genome, t.dimension(), scratch_);
  ++used_;
  return t.cost_unchecked(scratch_);
}

Genome random_genome(std::size_t length, Rng& rng) {
  Genome g(length);
  std::iota(g.begin(), g.end(), 1);
  std::shuffle(g.begin(), g.end(), rng);
  return g;
}

namespace {

void balance_skills(std::vector<Individual>& pop, std::size_t num_tasks) {
  const auto P = pop.size();
  std::vector<std::size_t> quota(num_tasks, P / num_tasks);
  for (std::size_t k = 0; k < P % num_tasks; ++k) ++quota[k];

  // Per task, individuals in ascending factorial-rank order.
  std::vector<std::vector<std::size_t>> by_rank(num_tasks, std::vector<std::size_t>(P));
  for (std::size_t k = 0; k < num_tasks; ++k)
    for (std::size_t i = 0; i < P; ++i) by_rank[k][pop[i].factorial_ranks[k] - 1] = i;

  std::vector<bool> claimed(P, false);
  std::vector<std::size_t> cursor(num_tasks, 0), owned(num_tasks, 0);
  std::size_t assigned = 0;
  while (assigned < P) {
    for (std::size_t k = 0; k < num_tasks && assigned < P; ++k) {
      if (owned[k] == quota[k]) continue;
      while (claimed[by_rank[k][cursor[k]]]) ++cursor[k];
      const auto i = by_rank[k][cursor[k]];
      claimed[i] = true;
      pop[i].skill_factor = k;
      ++owned[k];
      ++assigned;
    }
  }
}

}  // namespace

std::vector<Individual> init_population(std::size_t population_size, Evaluator& evaluator, Rng& rng,
                                        bool balanced) {
  const auto K = evaluator.num_tasks();
  if (population_size < K)
    throw std::invalid_argument("population size " + std::to_string(population_size) +
                                " is smaller than the number of tasks " + std::to_string(K));
  std::vector<Individual> pop(population_size);
  std::uint64_t next_id = 0;
  for (auto& ind : pop) {
    ind.id = next_id++;
    ind.genome = random_genome(evaluator.max_dimension(), rng);
    ind.factorial_costs.resize(K);
    ind.factorial_ranks.assign(K, 0);
    for (std::size_t k = 0; k < K; ++k) ind.factorial_costs[k] = evaluator.evaluate(ind.genome, k);
    ind.mutation_kind = coin(rng) ? MutationKind::Insertion : MutationKind::TwoOpt;
  }
  refresh_mfo_fields(pop, K);
  if (balanced) balance_skills(pop, K);
  return pop;
}

}  // namespace emt
