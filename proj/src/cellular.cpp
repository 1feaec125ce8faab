#include "emt/solvers.hpp"
#include "solver_internal.hpp"

namespace emt {

namespace {

GridSnapshot snapshot(const CellularGrid& grid, std::uint64_t generation, std::size_t rebuild_index) {
  return {generation, rebuild_index, grid.rows(), grid.cols(), grid.skill_layout()};
}

RunResult run_cellular(SolverId id, std::span<const TaskDefinition> tasks, const SolverConfig& config,
                       const RunHooks& hooks) {
  config.validate(id, tasks.size());
  const bool adaptive = id == SolverId::AtMfcga;
  const auto K = tasks.size();
  const auto P = config.population;
  Rng rng(config.seed);
  Evaluator ev(tasks, config.budget);
  RunResult result;
  result.solver = id;
  result.seed = config.seed;

  auto pop = init_population(P, ev, rng, true);
  if (!adaptive)
    for (auto& ind : pop) ind.mutation_kind = MutationKind::TwoOpt;
  detail::BestTracker best(K);
  for (const auto& ind : pop) best.offer_all(ind);
  // AT-MFCGA starts every entry at one so that the roulette never sees an all-zero row.
  TransferMatrix g(K, adaptive ? 1 : 0);
  CellularGrid grid(config.grid_rows, config.grid_cols, std::move(pop));
  std::size_t rebuilds = 0;
  if (adaptive) result.grid_snapshots.push_back(snapshot(grid, 0, 0));

  // Each cell update costs two evaluations; a sweep only starts if it fits.
  while (ev.remaining() >= 2 * P) {
    const auto gen = result.generations + 1;
    for (std::size_t idx = 0; idx < P; ++idx) {
      const auto neighbors = moore_neighbors(grid, grid.cell_of(idx));
      const auto& donor = grid.at(neighbors[uniform_index(rng, 0, neighbors.size() - 1)]);
      auto& self = grid.at(idx);
      const auto task = self.skill_factor;
      const auto donor_skill = donor.skill_factor;

      Genome xc = random_order_crossover(self.genome, donor.genome, rng);
      Genome xm = random_mutation(self.genome, self.mutation_kind, rng);
      const double cc = ev.evaluate(xc, task);
      const double cm = ev.evaluate(xm, task);
      best.offer(xc, task, cc);
      best.offer(xm, task, cm);
      if (donor_skill == task)
        ++result.intra_task_crossovers;
      else
        ++result.inter_task_crossovers;

      // Incumbent keeps the cell on ties; crossover beats mutation on ties.
      const double incumbent = self.skill_cost();
      Genome* winner = nullptr;
      double winner_cost = incumbent;
      if (cc < incumbent && cc <= cm) {
        winner = &xc;
        winner_cost = cc;
        g.record(donor_skill, task);
        if (hooks.on_transfer) hooks.on_transfer({gen, donor_skill, task});
      } else if (cm < incumbent) {
        winner = &xm;
        winner_cost = cm;
      }
      if (winner) {
        self.genome = std::move(*winner);
        std::fill(self.factorial_costs.begin(), self.factorial_costs.end(), kUnevaluated);
        self.factorial_costs[task] = winner_cost;
      }
    }
    result.generations = gen;
    result.trace.push_back(best.costs());
    if (adaptive) result.transfer_history.push_back(g);
    if (hooks.on_sweep) hooks.on_sweep(gen, grid);
    if (adaptive && gen % config.adaptive_frequency == 0) {
      grid = rebuild_grid(std::move(grid), g, config.p_same_task, rng);
      result.grid_snapshots.push_back(snapshot(grid, gen, ++rebuilds));
    }
  }

  result.evaluations = ev.used();
  result.transfers = g;
  best.finish(result);
  return result;
}

}  // namespace

RunResult run_mfcga(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks) {
  return run_cellular(SolverId::Mfcga, tasks, config, hooks);
}

RunResult run_atmfcga(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks) {
  return run_cellular(SolverId::AtMfcga, tasks, config, hooks);
}

}  // namespace emt
