#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "emt/config.hpp"
#include "emt/errors.hpp"
#include "emt/export.hpp"
#include "emt/harness.hpp"
#include "emt/instance_io.hpp"

namespace fs = std::filesystem;
using namespace emt;

namespace {

struct FlagSet {
  std::map<std::string, std::vector<std::string>> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
};

struct FlagDoc {
  const char* key;
  const char* help;
  const char* default_value;
};

// Solver parameters, shared by solve and experiment.
const FlagDoc kSolverFlags[] = {
    {"budget", "objective evaluations per run, initialization included", "500000"},
    {"population", "population size", "200 (small cases), 300 (TC_ALL)"},
    {"grid_rows", "cellular grid rows", "10"},
    {"grid_cols", "cellular grid columns", "20 (small cases), 30 (TC_ALL)"},
    {"rmp", "MFEA random mating probability", "0.9"},
    {"rmp_initial", "MFEA-II initial RMP matrix value", "0.95"},
    {"mutation_probability", "MFEA-II mutation probability", "0.2"},
    {"delta_inc", "MFEA-II RMP increase factor", "0.99"},
    {"delta_dec", "MFEA-II RMP decrease factor", "0.99"},
    {"rmp_frozen", "MFEA-II: keep the RMP matrix at its initial value", "false"},
    {"adaptive_frequency", "AT-MFCGA generations between grid rebuilds", "100"},
    {"p_same_task", "AT-MFCGA probability of chaining the same task while rebuilding", "0.5"},
};

std::string flag_name(const std::string& key) {
  std::string f = "--" + key;
  for (auto& c : f)
    if (c == '_') c = '-';
  return f;
}

std::string type_name(const std::string& key) {
  static const std::map<std::string, std::string> types{
      {"out", "DIR"},          {"instance_dir", "DIR"},  {"instance", "FAMILY:PATH"}, {"test_case", "NAME"},
      {"solver", "NAME"},      {"control", "NAME"},      {"seed", "UINT"},           {"reps", "UINT"},
      {"jobs", "UINT"},        {"budget", "UINT"},       {"population", "UINT"},     {"grid_rows", "UINT"},
      {"grid_cols", "UINT"},   {"adaptive_frequency", "UINT"}, {"rmp_frozen", "BOOL"}};
  auto it = types.find(key);
  return it != types.end() ? it->second : "PROB";
}

void add_flag(CLI::App* app, FlagSet& set, const std::string& key, const std::string& help,
              const std::string& default_value, bool multi = false) {
  auto* opt = app->add_option(flag_name(key), set.values[key], help);
  if (!default_value.empty()) opt->default_str(default_value);
  if (!multi) opt->expected(1);
  opt->type_name(type_name(key));
  set.options[key] = opt;
}

void add_common(CLI::App* app, FlagSet& set) {
  app->add_option("--config", set.config_path, "flat key = value config file; flags override it")->type_name("FILE");
  add_flag(app, set, "out", "output directory; nothing is written outside it", "out");
  add_flag(app, set, "instance_dir", "instance directory", "$EMT_INSTANCE_DIR or data/instances");
}

void add_tasks(CLI::App* app, FlagSet& set) {
  add_flag(app, set, "test_case", "benchmark test case (TC_TSP, TC_VRP, ..., TC_ALL)", "");
  add_flag(app, set, "instance", "explicit instance as family:path (repeatable)", "", true);
}

void add_solver(CLI::App* app, FlagSet& set, bool experiment) {
  add_flag(app, set, "solver",
           experiment ? "mfea, mfea-ii, mfcga, at-mfcga, a comma list, or all" : "mfea, mfea-ii, mfcga or at-mfcga",
           "at-mfcga");
  add_flag(app, set, "seed", experiment ? "base seed; repetition r uses seed+r" : "random seed", "1");
  for (const auto& f : kSolverFlags) add_flag(app, set, f.key, f.help, f.default_value);
}

CliConfig resolve(const std::string& subcommand, const FlagSet& set) {
  CliConfig c = set.config_path.empty() ? CliConfig{} : load_config(set.config_path);
  c.subcommand = subcommand;
  for (const auto& [key, opt] : set.options) {
    if (opt->count() == 0) continue;
    if (key == "instance") c.instances.clear();
    for (const auto& v : set.values.at(key)) set_config_value(c, key, v);
  }
  return c;
}

fs::path instance_dir(const CliConfig& c) {
  return c.instance_dir.empty() ? default_instance_dir() : fs::path(c.instance_dir);
}

TestCase load_tasks(const CliConfig& c) {
  if (c.test_case && !c.instances.empty()) throw ConfigError("give either --test-case or --instance, not both");
  if (c.test_case) {
    test_case_spec(*c.test_case);
    return build_test_case(*c.test_case, instance_dir(c));
  }
  if (c.instances.empty()) throw ConfigError("no tasks: give --test-case or --instance");
  TestCase tc;
  tc.name = "custom";
  for (const auto& spec : c.instances) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("--instance expects family:path, got '" + spec + "'");
    Family f;
    try {
      f = parse_family(spec.substr(0, colon));
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    auto task = load_instance_file(f, spec.substr(colon + 1));
    if (!task.known_optimum()) task.set_known_optimum(known_optimum(task.name()));
    tc.tasks.push_back(std::move(task));
  }
  tc.size_class = tc.tasks.size() > 10 ? SizeClass::Large : SizeClass::Small;
  return tc;
}

std::vector<std::string> task_names(const TestCase& tc) {
  std::vector<std::string> names;
  for (const auto& t : tc.tasks) names.push_back(t.name());
  return names;
}

std::vector<SolverId> parse_solver_list(const std::string& s) {
  if (s == "all") return all_solvers();
  std::vector<SolverId> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_solver(item));
  if (out.empty()) throw ConfigError("no solver given");
  return out;
}

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + root_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    const auto path = root_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }

 private:
  fs::path root_;
};

int cmd_solve(const CliConfig& c) {
  const auto solver = parse_solver(c.solver);
  const auto tc = load_tasks(c);
  const auto config = resolve_solver_config(c, tc.size_class);
  config.validate(solver, tc.tasks.size());
  const auto names = task_names(tc);

  std::vector<TransferEvent> events;
  RunHooks hooks;
  hooks.on_transfer = [&](const TransferEvent& e) { events.push_back(e); };
  const auto result = run_solver(solver, tc.tasks, config, hooks);

  const OutputDir out(c.out_dir);
  out.write("effective_config.txt", [&](std::ostream& o) { o << effective_config_text(c, config); });
  out.write("run.json", [&](std::ostream& o) { write_run_json(o, result, names); });
  out.write("convergence.csv", [&](std::ostream& o) { write_convergence_csv(o, result, names); });
  if (solver == SolverId::Mfcga || solver == SolverId::AtMfcga)
    out.write("transfer_events.csv", [&](std::ostream& o) { write_transfer_events_csv(o, events, names); });
  if (solver == SolverId::AtMfcga) {
    out.write("transfer_matrices.csv", [&](std::ostream& o) { write_transfer_history_csv(o, result, names); });
    out.write("grid_snapshots.csv", [&](std::ostream& o) { write_grid_snapshots_csv(o, result); });
  }
  if (solver == SolverId::Mfea2)
    out.write("rmp_history.csv", [&](std::ostream& o) { write_rmp_history_csv(o, result, names); });

  std::cout << solver_name(solver) << " seed " << result.seed << ": " << result.evaluations << " evaluations, "
            << result.generations << " generations\n";
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::cout << "  " << names[k] << ' ' << result.best_costs[k];
    if (const auto& opt = tc.tasks[k].known_optimum()) std::cout << " (best known " << *opt << ')';
    std::cout << '\n';
  }
  return 0;
}

void print_report(const ExperimentReport& rep) {
  std::cout << "task";
  for (const auto& s : rep.solvers) std::cout << '\t' << s;
  std::cout << '\n';
  for (std::size_t t = 0; t < rep.tasks.size(); ++t) {
    std::cout << rep.tasks[t];
    for (std::size_t s = 0; s < rep.solvers.size(); ++s) std::cout << '\t' << rep.mean[t][s];
    std::cout << '\n';
  }
  if (rep.friedman_statistic) {
    std::cout << "mean rank";
    for (double r : rep.mean_ranks) std::cout << '\t' << r;
    std::cout << "\nFriedman statistic " << *rep.friedman_statistic << '\n';
    for (const auto& h : rep.holm)
      std::cout << "Holm vs " << *rep.control << ": " << rep.solvers[h.solver] << " p=" << h.p_unadjusted
                << " adjusted=" << h.p_adjusted << '\n';
  }
}

int cmd_experiment(const CliConfig& c) {
  const auto solvers = parse_solver_list(c.solver);
  if (!c.test_case && c.instances.empty()) throw ConfigError("experiment needs --test-case or --instance");
  const auto tc = load_tasks(c);
  const auto config = resolve_solver_config(c, tc.size_class);
  for (auto s : solvers) config.validate(s, tc.tasks.size());

  std::vector<Sample> samples;
  for (auto s : solvers) {
    std::cerr << "running " << solver_name(s) << " x" << c.reps << " on " << tc.name << '\n';
    const auto runs = run_experiment(tc, s, config, c.reps, c.seed, c.jobs);
    const auto part = make_samples(tc, runs);
    samples.insert(samples.end(), part.begin(), part.end());
  }
  const auto report = build_report(samples, c.control);

  const OutputDir out(c.out_dir);
  out.write("effective_config.txt", [&](std::ostream& o) { o << effective_config_text(c, config); });
  out.write("samples.csv", [&](std::ostream& o) { write_samples_csv(o, samples); });
  out.write("report.json", [&](std::ostream& o) { write_report_json(o, report); });
  print_report(report);
  return 0;
}

int cmd_similarity(const CliConfig& c, const std::string& mode) {
  const auto tc = load_tasks(c);
  SimilarityMatrix m;
  if (mode == "structure") {
    m = similarity_report(tc.tasks);
  } else {
    std::vector<std::optional<KnownSolution>> solutions;
    for (std::size_t k = 0; k < tc.tasks.size(); ++k) {
      fs::path dir = instance_dir(c);
      if (!c.instances.empty()) {
        const auto& spec = c.instances[k];
        dir = fs::path(spec.substr(spec.find(':') + 1)).parent_path();
      }
      solutions.push_back(load_known_solution(dir, tc.tasks[k]));
    }
    m = overlap_report(tc.tasks, solutions);
  }
  const OutputDir out(c.out_dir);
  out.write("similarity.csv", [&](std::ostream& o) { write_similarity_csv(o, m); });
  write_similarity_csv(std::cout, m);
  return 0;
}

int cmd_stats(const CliConfig& c, const std::vector<std::string>& sample_files) {
  std::vector<Sample> samples;
  for (const auto& f : sample_files) {
    std::ifstream in(f);
    if (!in) throw std::runtime_error("cannot open " + f);
    try {
      const auto part = read_samples_csv(in);
      samples.insert(samples.end(), part.begin(), part.end());
    } catch (const ParseError& e) {
      throw std::runtime_error(f + ": " + e.what());
    }
  }
  const auto report = build_report(samples, c.control);
  const OutputDir out(c.out_dir);
  out.write("report.json", [&](std::ostream& o) { write_report_json(o, report); });
  print_report(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary multitasking over permutation problems (MFEA, MFEA-II, MFCGA, AT-MFCGA)"};
  app.require_subcommand(1);

  FlagSet solve_flags, exp_flags, sim_flags, stats_flags;
  auto* solve = app.add_subcommand("solve", "run one solver once and export its traces");
  add_common(solve, solve_flags);
  add_tasks(solve, solve_flags);
  add_solver(solve, solve_flags, false);

  auto* experiment = app.add_subcommand("experiment", "repeated runs with samples CSV and report JSON");
  add_common(experiment, exp_flags);
  add_tasks(experiment, exp_flags);
  add_solver(experiment, exp_flags, true);
  add_flag(experiment, exp_flags, "reps", "repetitions per solver", "20");
  add_flag(experiment, exp_flags, "jobs", "repetitions run concurrently", "1");
  add_flag(experiment, exp_flags, "control", "control solver for the Holm procedure", "AT-MFCGA");

  std::string mode = "structure";
  auto* similarity = app.add_subcommand("similarity", "pairwise similarity of same-family instances");
  add_common(similarity, sim_flags);
  add_tasks(similarity, sim_flags);
  similarity->add_option("--mode", mode, "structure (instance data) or overlap (best-known solution edges)")
      ->check(CLI::IsMember({"structure", "overlap"}))
      ->capture_default_str();

  std::vector<std::string> sample_files;
  auto* stats = app.add_subcommand("stats", "Friedman and Holm statistics from samples CSV files");
  add_common(stats, stats_flags);
  stats->add_option("--samples", sample_files, "samples CSV file(s) written by experiment")->required()->type_name("FILE");
  add_flag(stats, stats_flags, "control", "control solver for the Holm procedure", "AT-MFCGA");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << " (see --help)\n";
    return 2;
  }

  try {
    if (*solve) return cmd_solve(resolve("solve", solve_flags));
    if (*experiment) return cmd_experiment(resolve("experiment", exp_flags));
    if (*similarity) return cmd_similarity(resolve("similarity", sim_flags), mode);
    if (*stats) return cmd_stats(resolve("stats", stats_flags), sample_files);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
