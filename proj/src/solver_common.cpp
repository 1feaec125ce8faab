#include <algorithm>
#include <cctype>
#include <string>

#include "emt/errors.hpp"
#include "emt/solvers.hpp"

namespace emt {

std::string_view solver_name(SolverId id) {
  switch (id) {
    case SolverId::Mfea: return "MFEA";
    case SolverId::Mfea2: return "MFEA-II";
    case SolverId::Mfcga: return "MFCGA";
    case SolverId::AtMfcga: return "AT-MFCGA";
  }
  return "?";
}

SolverId parse_solver(std::string_view name) {
  std::string s;
  for (char c : name)
    if (c != '-' && c != '_') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "mfea") return SolverId::Mfea;
  if (s == "mfeaii" || s == "mfea2") return SolverId::Mfea2;
  if (s == "mfcga") return SolverId::Mfcga;
  if (s == "atmfcga") return SolverId::AtMfcga;
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected mfea, mfea-ii, mfcga, at-mfcga)");
}

const std::vector<SolverId>& all_solvers() {
  static const std::vector<SolverId> ids{SolverId::Mfea, SolverId::Mfea2, SolverId::Mfcga,
                                         SolverId::AtMfcga};
  return ids;
}

SolverConfig default_config(SizeClass size) {
  SolverConfig c;
  if (size == SizeClass::Large) {
    c.population = 300;
    c.grid_rows = 10;
    c.grid_cols = 30;
  }
  return c;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void SolverConfig::validate(SolverId solver, std::size_t num_tasks) const {
  require(num_tasks >= 1, "at least one task is required");
  require(budget > 0, "budget must be positive");
  require(population >= num_tasks, "population (" + std::to_string(population) +
                                       ") must be at least the number of tasks (" +
                                       std::to_string(num_tasks) + ")");
  require(budget >= static_cast<std::uint64_t>(num_tasks) * population,
          "budget " + std::to_string(budget) + " is smaller than the initialization cost K*P = " +
              std::to_string(num_tasks * population));
  switch (solver) {
    case SolverId::Mfea:
      require(population >= 2 && population % 2 == 0, "population must be even and >= 2 for MFEA");
      require(unit_interval(rmp), "rmp must be in [0,1]");
      break;
    case SolverId::Mfea2:
      require(population >= 2 && population % 2 == 0, "population must be even and >= 2 for MFEA-II");
      require(unit_interval(rmp_initial), "rmp_initial must be in [0,1]");
      require(unit_interval(mutation_probability), "mutation_probability must be in [0,1]");
      require(delta_inc > 0.0 && delta_inc <= 1.0, "delta_inc must be in (0,1]");
      require(delta_dec > 0.0 && delta_dec <= 1.0, "delta_dec must be in (0,1]");
      break;
    case SolverId::AtMfcga:
      require(adaptive_frequency >= 1, "adaptive_frequency must be >= 1");
      require(unit_interval(p_same_task), "p_same_task must be in [0,1]");
      [[fallthrough]];
    case SolverId::Mfcga:
      require(grid_rows >= 3 && grid_cols >= 3, "grid must be at least 3x3");
      require(grid_rows * grid_cols == population,
              "grid " + std::to_string(grid_rows) + "x" + std::to_string(grid_cols) +
                  " does not match population " + std::to_string(population));
      break;
  }
}

RmpMatrix::RmpMatrix(std::size_t num_tasks, double initial) : k_(num_tasks), values_(num_tasks * num_tasks, initial) {
  for (std::size_t k = 0; k < k_; ++k) values_[k * k_ + k] = 1.0;
}

void RmpMatrix::update(std::size_t donor, std::size_t receiver, bool improved, double delta_inc,
                       double delta_dec) {
  if (donor == receiver) return;
  double v = values_[donor * k_ + receiver];
  v = improved ? std::min(1.0, v / delta_inc) : std::max(kFloor, v * delta_dec);
  values_[donor * k_ + receiver] = v;
  values_[receiver * k_ + donor] = v;
}

RunResult run_solver(SolverId solver, std::span<const TaskDefinition> tasks, const SolverConfig& config,
                     const RunHooks& hooks) {
  switch (solver) {
    case SolverId::Mfea: return run_mfea(tasks, config, hooks);
    case SolverId::Mfea2: return run_mfea2(tasks, config, hooks);
    case SolverId::Mfcga: return run_mfcga(tasks, config, hooks);
    case SolverId::AtMfcga: return run_atmfcga(tasks, config, hooks);
  }
  throw ConfigError("unknown solver");
}

}  // namespace emt
