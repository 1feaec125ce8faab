#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emt/grid.hpp"
#include "emt/mfo.hpp"
#include "emt/problems.hpp"

namespace emt {

enum class SolverId { Mfea, Mfea2, Mfcga, AtMfcga };

std::string_view solver_name(SolverId id);
// Accepts "mfea", "mfea-ii"/"mfea2", "mfcga", "at-mfcga"/"atmfcga" (case-insensitive).
SolverId parse_solver(std::string_view name);
const std::vector<SolverId>& all_solvers();

enum class SizeClass { Small, Large };

struct SolverConfig {
  std::size_t population = 200;
  std::size_t grid_rows = 10;
  std::size_t grid_cols = 20;
  std::uint64_t budget = 500'000;
  // MFEA
  double rmp = 0.9;
  // MFEA-II
  double rmp_initial = 0.95;
  double mutation_probability = 0.2;
  double delta_inc = 0.99;
  double delta_dec = 0.99;
  bool rmp_frozen = false;
  // AT-MFCGA
  std::size_t adaptive_frequency = 100;
  double p_same_task = 0.5;

  std::uint64_t seed = 1;

  // Throws ConfigError naming the offending field.
  void validate(SolverId solver, std::size_t num_tasks) const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

// Defaults keyed by size class: small 200 / 10x20, large 300 / 10x30.
SolverConfig default_config(SizeClass size);

// Symmetric K x K inter-task crossover probabilities with a unit diagonal.
class RmpMatrix {
 public:
  static constexpr double kFloor = 1e-3;

  RmpMatrix(std::size_t num_tasks, double initial);

  std::size_t num_tasks() const { return k_; }
  double at(std::size_t a, std::size_t b) const { return values_[a * k_ + b]; }
  // improved: v <- min(1, v / delta_inc); otherwise v <- max(kFloor, v * delta_dec).
  // Both (donor, receiver) and (receiver, donor) are written. Diagonal is untouched.
  void update(std::size_t donor, std::size_t receiver, bool improved, double delta_inc, double delta_dec);

 private:
  std::size_t k_;
  std::vector<double> values_;
};

struct TransferEvent {
  std::uint64_t generation;
  std::size_t donor_skill;
  std::size_t receiver_skill;
};

struct GridSnapshot {
  std::uint64_t generation = 0;
  std::size_t rebuild_index = 0;  // 0 = initial arrangement
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> skills;  // 0-based, row-major
  friend bool operator==(const GridSnapshot&, const GridSnapshot&) = default;
};

struct RunResult {
  SolverId solver = SolverId::Mfea;
  std::uint64_t seed = 0;
  std::vector<double> best_costs;          // per task
  std::vector<Genome> best_genomes;        // unified representation, per task
  std::vector<std::vector<double>> trace;  // per generation, per-task best cost
  std::uint64_t evaluations = 0;
  std::uint64_t generations = 0;
  std::uint64_t inter_task_crossovers = 0;
  std::uint64_t intra_task_crossovers = 0;
  TransferMatrix transfers;                       // crossover wins (cellular solvers)
  std::vector<TransferMatrix> transfer_history;   // AT-MFCGA: G after every generation
  std::vector<GridSnapshot> grid_snapshots;       // AT-MFCGA: initial + every rebuild
  std::vector<std::vector<double>> rmp_history;   // MFEA-II: flattened RMP after every generation

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// Optional observers, mainly for tests and the event export.
struct RunHooks {
  std::function<void(const TransferEvent&)> on_transfer;
  std::function<void(std::uint64_t generation, const CellularGrid&)> on_sweep;
  std::function<void(std::uint64_t generation, const std::vector<Individual>&)> on_generation;
  std::function<void(const RmpMatrix&)> on_rmp;
};

RunResult run_mfea(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks = {});
RunResult run_mfea2(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks = {});
RunResult run_mfcga(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks = {});
RunResult run_atmfcga(std::span<const TaskDefinition> tasks, const SolverConfig& config, const RunHooks& hooks = {});

RunResult run_solver(SolverId solver, std::span<const TaskDefinition> tasks, const SolverConfig& config,
                     const RunHooks& hooks = {});

}  // namespace emt
