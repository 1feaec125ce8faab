#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emt/problems.hpp"
#include "emt/solvers.hpp"
#include "emt/stats.hpp"

namespace emt {

struct InstanceRef {
  Family family;
  std::string name;
};

struct TestCaseSpec {
  std::string name;
  std::vector<InstanceRef> instances;
  SizeClass size_class = SizeClass::Small;
};

// The 11 benchmark compositions: four single-family cases, six pairwise
// unions and TC_ALL.
const std::vector<TestCaseSpec>& test_case_table();
// Throws ConfigError listing every valid name.
const TestCaseSpec& test_case_spec(std::string_view name);

// Best known objective values (LOP negated), or nullopt for unknown names.
std::optional<double> known_optimum(std::string_view instance);

// $EMT_INSTANCE_DIR if set, else "data/instances".
std::filesystem::path default_instance_dir();

// Looks for the instance under a few customary spellings and extensions.
// Throws std::runtime_error("missing instance file ...") if none exists.
std::filesystem::path find_instance_file(const std::filesystem::path& dir, Family family,
                                         const std::string& name);
// Loads the file and attaches the known optimum.
TaskDefinition load_named_instance(const std::filesystem::path& dir, Family family, const std::string& name);

struct TestCase {
  std::string name;
  SizeClass size_class = SizeClass::Small;
  std::vector<TaskDefinition> tasks;
};

TestCase build_test_case(std::string_view name, const std::filesystem::path& instance_dir);

// A published best solution: a permutation (TSP, QAP, LOP) or a route set (CVRP).
struct KnownSolution {
  std::vector<int> permutation;
  std::vector<std::vector<int>> routes;
};

std::optional<std::filesystem::path> find_solution_file(const std::filesystem::path& dir, Family family,
                                                        const std::string& name);
// nullopt when no solution file exists; parse errors propagate.
std::optional<KnownSolution> load_known_solution(const std::filesystem::path& dir, const TaskDefinition& task);
double known_solution_cost(const TaskDefinition& task, const KnownSolution& solution);

// Runs seeds base_seed .. base_seed+reps-1, at most `jobs` at a time.
// Results are ordered by seed regardless of `jobs`.
std::vector<RunResult> run_experiment(const TestCase& test_case, SolverId solver, const SolverConfig& config,
                                      std::size_t reps, std::uint64_t base_seed, std::size_t jobs = 1);

struct Sample {
  std::string test_case;
  std::string solver;
  std::string task;
  std::uint64_t seed = 0;
  double best_cost = 0.0;
  std::uint64_t evaluations_used = 0;
  friend bool operator==(const Sample&, const Sample&) = default;
};

std::vector<Sample> make_samples(const TestCase& test_case, const std::vector<RunResult>& runs);
void write_samples_csv(std::ostream& out, const std::vector<Sample>& samples);
// Throws ParseError on malformed rows.
std::vector<Sample> read_samples_csv(std::istream& in);

struct ExperimentReport {
  std::string test_case;
  std::vector<std::string> solvers;  // columns
  std::vector<std::string> tasks;    // rows
  std::vector<std::vector<double>> mean;  // [task][solver]
  std::vector<std::vector<double>> stdev;  // [task][solver], sample deviation
  std::vector<std::size_t> runs;          // per solver
  // Filled when there are at least two solvers and two tasks.
  std::vector<double> mean_ranks;
  std::optional<double> friedman_statistic;
  std::optional<std::string> control;
  std::vector<HolmRow> holm;
};

// Aggregates samples into per-task means and deviations and, with enough
// solvers and tasks, Friedman ranks on the means and Holm against `control`
// (default AT-MFCGA when present, otherwise the best-ranked solver).
ExperimentReport build_report(const std::vector<Sample>& samples,
                              std::optional<std::string> control = std::nullopt);

struct SimilarityCell {
  enum class Kind { Value, NotApplicable, Missing };
  Kind kind = Kind::NotApplicable;
  int value = 0;
};

struct SimilarityMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<SimilarityCell>> cells;
};

// Instance-structure similarity for every same-family pair.
SimilarityMatrix similarity_report(const std::vector<TaskDefinition>& tasks);
// Edge overlap of best solutions (TSP and CVRP pairs); a pair with a missing
// solution is marked Missing.
SimilarityMatrix overlap_report(const std::vector<TaskDefinition>& tasks,
                                const std::vector<std::optional<KnownSolution>>& solutions);

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& m);

}  // namespace emt
