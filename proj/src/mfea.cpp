#include <algorithm>
#include <numeric>

#include "emt/solvers.hpp"
#include "solver_internal.hpp"

namespace emt {

namespace {

enum class PairKind { Mutation, Intra, Inter };

struct Offspring {
  Genome genome;
  std::size_t skill;
};

// Merges parents and offspring and keeps the best P by scalar fitness.
// Ties keep merge order, so parents win over equally fit children.
std::vector<Individual> elitist_select(std::vector<Individual> pop, std::vector<Individual> children,
                                       std::size_t num_tasks) {
  const auto P = pop.size();
  for (auto& c : children) pop.push_back(std::move(c));
  refresh_mfo_fields(pop, num_tasks);
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].scalar_fitness > pop[b].scalar_fitness;
  });
  std::vector<Individual> next;
  next.reserve(P);
  for (std::size_t i = 0; i < P; ++i) next.push_back(std::move(pop[order[i]]));
  return next;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

std::size_t pick_skill(std::size_t a, std::size_t b, Rng& rng) { return coin(rng) ? b : a; }

// Shared generational loop. `breed` fills `out` with two children for the
// pair (a, b) and says how they were produced; `after` sees each child
// once it has been evaluated, together with its parents.
template <class Breed, class After>
RunResult generational_loop(SolverId id, std::span<const TaskDefinition> tasks, const SolverConfig& config,
                            const RunHooks& hooks, Rng& rng, Breed&& breed, After&& after) {
  const auto K = tasks.size();
  const auto P = config.population;
  Evaluator ev(tasks, config.budget);
  RunResult result;
  result.solver = id;
  result.seed = config.seed;

  auto pop = init_population(P, ev, rng, false);
  detail::BestTracker best(K);
  for (const auto& ind : pop) best.offer_all(ind);
  std::uint64_t next_id = P;

  while (ev.remaining() >= P) {
    const auto order = shuffled_indices(P, rng);
    std::vector<Individual> children;
    children.reserve(P);
    for (std::size_t p = 0; p + 1 < P; p += 2) {
      const auto& a = pop[order[p]];
      const auto& b = pop[order[p + 1]];
      std::vector<Offspring> out;
      const PairKind kind = breed(pop, a, b, out);
      if (kind == PairKind::Inter) ++result.inter_task_crossovers;
      if (kind == PairKind::Intra) ++result.intra_task_crossovers;
      for (auto& o : out) {
        const double cost = ev.evaluate(o.genome, o.skill);
        best.offer(o.genome, o.skill, cost);
        auto child = detail::make_child(std::move(o.genome), o.skill, cost, K, next_id++);
        after(a, b, child);
        children.push_back(std::move(child));
      }
    }
    pop = elitist_select(std::move(pop), std::move(children), K);
    ++result.generations;
    result.trace.push_back(best.costs());
    if (hooks.on_generation) hooks.on_generation(result.generations, pop);
  }

  result.evaluations = ev.used();
  best.finish(result);
  return result;
}

}  // namespace

RunResult run_mfea(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks) {
  config.validate(SolverId::Mfea, tasks.size());
  Rng rng(config.seed);
  auto breed = [&](const std::vector<Individual>&, const Individual& a, const Individual& b,
                   std::vector<Offspring>& out) {
    const auto ta = a.skill_factor, tb = b.skill_factor;
    if (ta == tb) {
      out.push_back({random_order_crossover(a.genome, b.genome, rng), ta});
      out.push_back({random_order_crossover(b.genome, a.genome, rng), ta});
      return PairKind::Intra;
    }
    if (uniform01(rng) < config.rmp) {
      out.push_back({random_order_crossover(a.genome, b.genome, rng), pick_skill(ta, tb, rng)});
      out.push_back({random_order_crossover(b.genome, a.genome, rng), pick_skill(ta, tb, rng)});
      return PairKind::Inter;
    }
    out.push_back({random_mutation(a.genome, MutationKind::TwoOpt, rng), ta});
    out.push_back({random_mutation(b.genome, MutationKind::TwoOpt, rng), tb});
    return PairKind::Mutation;
  };
  auto after = [](const Individual&, const Individual&, const Individual&) {};
  return generational_loop(SolverId::Mfea, tasks, config, hooks, rng, breed, after);
}

RunResult run_mfea2(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks) {
  config.validate(SolverId::Mfea2, tasks.size());
  const auto K = tasks.size();
  Rng rng(config.seed);
  RmpMatrix rmp(K, config.rmp_initial);
  bool crossed = false;  // whether the current pair took the inter-task path

  auto maybe_mutate = [&](Genome g) {
    if (uniform01(rng) < config.mutation_probability) return random_mutation(g, MutationKind::TwoOpt, rng);
    return g;
  };
  // A same-skill partner for `self`, other than itself when possible.
  auto partner = [&](const std::vector<Individual>& pop, const Individual& self) -> const Individual& {
    std::vector<const Individual*> same;
    for (const auto& ind : pop)
      if (ind.skill_factor == self.skill_factor && &ind != &self) same.push_back(&ind);
    if (same.empty()) return self;
    return *same[uniform_index(rng, 0, same.size() - 1)];
  };

  auto breed = [&](const std::vector<Individual>& pop, const Individual& a, const Individual& b,
                   std::vector<Offspring>& out) {
    const auto ta = a.skill_factor, tb = b.skill_factor;
    crossed = false;
    if (ta == tb) {
      out.push_back({maybe_mutate(parent_centric_ox(a.genome, b.genome, rng)), ta});
      out.push_back({maybe_mutate(parent_centric_ox(b.genome, a.genome, rng)), ta});
      return PairKind::Intra;
    }
    if (uniform01(rng) < rmp.at(ta, tb)) {
      crossed = true;
      out.push_back({maybe_mutate(parent_centric_ox(a.genome, b.genome, rng)), pick_skill(ta, tb, rng)});
      out.push_back({maybe_mutate(parent_centric_ox(b.genome, a.genome, rng)), pick_skill(ta, tb, rng)});
      return PairKind::Inter;
    }
    const auto& pa = partner(pop, a);
    const auto& pb = partner(pop, b);
    out.push_back({maybe_mutate(parent_centric_ox(a.genome, pa.genome, rng)), ta});
    out.push_back({maybe_mutate(parent_centric_ox(b.genome, pb.genome, rng)), tb});
    return PairKind::Intra;
  };

  auto after = [&](const Individual& a, const Individual& b, const Individual& child) {
    if (!crossed || config.rmp_frozen) return;
    const auto receiver = child.skill_factor;
    const auto& same = a.skill_factor == receiver ? a : b;
    const auto& other = a.skill_factor == receiver ? b : a;
    const bool improved = child.skill_cost() < same.factorial_costs[receiver];
    rmp.update(other.skill_factor, receiver, improved, config.delta_inc, config.delta_dec);
  };

  RunHooks inner = hooks;
  std::vector<std::vector<double>> history;
  inner.on_generation = [&](std::uint64_t gen, const std::vector<Individual>& pop) {
    std::vector<double> flat(K * K);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) flat[i * K + j] = rmp.at(i, j);
    history.push_back(std::move(flat));
    if (hooks.on_rmp) hooks.on_rmp(rmp);
    if (hooks.on_generation) hooks.on_generation(gen, pop);
  };
  auto result = generational_loop(SolverId::Mfea2, tasks, config, inner, rng, breed, after);
  result.rmp_history = std::move(history);
  return result;
}

}  // namespace emt
