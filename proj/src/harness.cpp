#include "emt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "emt/errors.hpp"
#include "emt/instance_io.hpp"

namespace emt {

namespace fs = std::filesystem;

namespace {

const std::vector<InstanceRef> kTsp{{Family::TSP, "kroA100"},
                                    {Family::TSP, "kroA150"},
                                    {Family::TSP, "kroA200"},
                                    {Family::TSP, "kroB150"},
                                    {Family::TSP, "kroC100"}};
const std::vector<InstanceRef> kVrp{{Family::CVRP, "P-n50-k7"},
                                    {Family::CVRP, "P-n50-k8"},
                                    {Family::CVRP, "P-n55-k7"},
                                    {Family::CVRP, "P-n55-k15"},
                                    {Family::CVRP, "P-n60-k10"}};
const std::vector<InstanceRef> kQap{{Family::QAP, "Nug25"},
                                    {Family::QAP, "Nug30"},
                                    {Family::QAP, "Kra30a"},
                                    {Family::QAP, "Kra30b"},
                                    {Family::QAP, "Kra32"}};
const std::vector<InstanceRef> kLop{{Family::LOP, "N-t59d11xx"},
                                    {Family::LOP, "N-t59f11xx"},
                                    {Family::LOP, "N-t59i11xx"},
                                    {Family::LOP, "N-t65f11xx"},
                                    {Family::LOP, "N-t70f11xx"}};

std::vector<InstanceRef> join(std::initializer_list<const std::vector<InstanceRef>*> parts) {
  std::vector<InstanceRef> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> name_variants(const std::string& name) {
  std::vector<std::string> out{name, lower(name)};
  if (name.rfind("N-", 0) == 0) {
    out.push_back(name.substr(2));
    out.push_back(lower(name.substr(2)));
  }
  return out;
}

std::optional<fs::path> find_first(const fs::path& dir, const std::string& name,
                                   const std::vector<std::string>& extensions) {
  for (const auto& n : name_variants(name))
    for (const auto& ext : extensions) {
      const auto p = dir / (n + ext);
      std::error_code ec;
      if (fs::is_regular_file(p, ec)) return p;
    }
  return std::nullopt;
}

std::vector<std::string> instance_extensions(Family f) {
  switch (f) {
    case Family::TSP: return {".tsp", ""};
    case Family::CVRP: return {".vrp", ""};
    case Family::QAP: return {".dat", ""};
    case Family::LOP: return {"", ".mat", ".txt", ".lop"};
  }
  return {""};
}

std::vector<std::string> solution_extensions(Family f) {
  switch (f) {
    case Family::TSP: return {".opt.tour", ".tour"};
    case Family::CVRP: return {".sol", ".opt.sol"};
    case Family::QAP: return {".sln", ".sol"};
    case Family::LOP: return {".sol", ".opt", ".ordering"};
  }
  return {};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<TestCaseSpec>& test_case_table() {
  static const std::vector<TestCaseSpec> table{
      {"TC_TSP", kTsp, SizeClass::Small},
      {"TC_VRP", kVrp, SizeClass::Small},
      {"TC_QAP", kQap, SizeClass::Small},
      {"TC_LOP", kLop, SizeClass::Small},
      {"TC_TSP_VRP", join({&kTsp, &kVrp}), SizeClass::Small},
      {"TC_TSP_QAP", join({&kTsp, &kQap}), SizeClass::Small},
      {"TC_TSP_LOP", join({&kTsp, &kLop}), SizeClass::Small},
      {"TC_VRP_QAP", join({&kVrp, &kQap}), SizeClass::Small},
      {"TC_VRP_LOP", join({&kVrp, &kLop}), SizeClass::Small},
      {"TC_QAP_LOP", join({&kQap, &kLop}), SizeClass::Small},
      {"TC_ALL", join({&kTsp, &kVrp, &kQap, &kLop}), SizeClass::Large},
  };
  return table;
}

const TestCaseSpec& test_case_spec(std::string_view name) {
  for (const auto& tc : test_case_table())
    if (tc.name == name) return tc;
  std::string valid;
  for (const auto& tc : test_case_table()) valid += (valid.empty() ? "" : ", ") + tc.name;
  throw ConfigError("unknown test case '" + std::string(name) + "' (valid: " + valid + ")");
}

std::optional<double> known_optimum(std::string_view instance) {
  static const std::map<std::string, double, std::less<>> optima{
      {"kroA100", 21282},       {"kroA150", 26524},        {"kroA200", 29368},       {"kroB150", 26524},
      {"kroC100", 20749},       {"P-n50-k7", 554},         {"P-n50-k8", 629},        {"P-n55-k7", 568},
      {"P-n55-k15", 945},       {"P-n60-k10", 744},        {"Nug25", 3744},          {"Nug30", 6124},
      {"Kra30a", 88900},        {"Kra30b", 91420},         {"Kra32", 88700},         {"N-t59d11xx", -163219},
      {"N-t59f11xx", -140678},  {"N-t59i11xx", -9182291},  {"N-t65f11xx", -254568},  {"N-t70f11xx", -413948},
  };
  auto it = optima.find(instance);
  if (it == optima.end()) return std::nullopt;
  return it->second;
}

fs::path default_instance_dir() {
  if (const char* env = std::getenv("EMT_INSTANCE_DIR"); env && *env) return env;
  return "data/instances";
}

fs::path find_instance_file(const fs::path& dir, Family family, const std::string& name) {
  if (auto p = find_first(dir, name, instance_extensions(family))) return *p;
  throw std::runtime_error("missing instance file for " + name + " (" + std::string(family_name(family)) +
                           ") in " + dir.string());
}

TaskDefinition load_named_instance(const fs::path& dir, Family family, const std::string& name) {
  auto task = load_instance_file(family, find_instance_file(dir, family, name));
  // The file's NAME field may differ in case; keep the benchmark spelling.
  TaskDefinition named(name, task.payload(), known_optimum(name));
  return named;
}

TestCase build_test_case(std::string_view name, const fs::path& instance_dir) {
  const auto& spec = test_case_spec(name);
  TestCase tc;
  tc.name = spec.name;
  tc.size_class = spec.size_class;
  tc.tasks.reserve(spec.instances.size());
  for (const auto& ref : spec.instances) tc.tasks.push_back(load_named_instance(instance_dir, ref.family, ref.name));
  return tc;
}

std::optional<fs::path> find_solution_file(const fs::path& dir, Family family, const std::string& name) {
  return find_first(dir, name, solution_extensions(family));
}

std::optional<KnownSolution> load_known_solution(const fs::path& dir, const TaskDefinition& task) {
  const auto path = find_solution_file(dir, task.family(), task.name());
  if (!path) return std::nullopt;
  std::ifstream in(*path);
  if (!in) throw std::runtime_error("cannot open " + path->string());
  KnownSolution s;
  try {
    switch (task.family()) {
      case Family::TSP: s.permutation = read_tsplib_tour(in); break;
      case Family::CVRP: s.routes = read_cvrp_solution(in); break;
      case Family::QAP: s.permutation = read_qaplib_solution(in); break;
      case Family::LOP: s.permutation = read_ordering(in); break;
    }
  } catch (const ParseError& e) {
    throw e.with_context(path->string());
  }
  return s;
}

double known_solution_cost(const TaskDefinition& task, const KnownSolution& solution) {
  if (task.family() == Family::CVRP)
    return cvrp_routes_cost(solution.routes, std::get<CvrpPayload>(task.payload()));
  return task.cost(solution.permutation);
}

std::vector<RunResult> run_experiment(const TestCase& test_case, SolverId solver, const SolverConfig& config,
                                      std::size_t reps, std::uint64_t base_seed, std::size_t jobs) {
  if (reps == 0) throw ConfigError("repetitions must be >= 1");
  config.validate(solver, test_case.tasks.size());
  std::vector<RunResult> results(reps);
  auto run_one = [&](std::size_t r) {
    auto c = config;
    c.seed = base_seed + r;
    results[r] = run_solver(solver, test_case.tasks, c);
  };
  jobs = std::clamp<std::size_t>(jobs, 1, reps);
  if (jobs == 1) {
    for (std::size_t r = 0; r < reps; ++r) run_one(r);
    return results;
  }
  std::vector<std::exception_ptr> errors(reps);
  std::vector<std::thread> workers;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t r; (r = next.fetch_add(1)) < reps;) {
        try {
          run_one(r);
        } catch (...) {
          errors[r] = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::vector<Sample> make_samples(const TestCase& test_case, const std::vector<RunResult>& runs) {
  std::vector<Sample> out;
  for (const auto& r : runs)
    for (std::size_t k = 0; k < test_case.tasks.size(); ++k)
      out.push_back({test_case.name, std::string(solver_name(r.solver)), test_case.tasks[k].name(), r.seed,
                     r.best_costs.at(k), r.evaluations});
  return out;
}

void write_samples_csv(std::ostream& out, const std::vector<Sample>& samples) {
  out << "test_case,solver,task,seed,best_cost,evaluations_used\n";
  for (const auto& s : samples)
    out << s.test_case << ',' << s.solver << ',' << s.task << ',' << s.seed << ',' << format_double(s.best_cost)
        << ',' << s.evaluations_used << '\n';
}

std::vector<Sample> read_samples_csv(std::istream& in) {
  std::vector<Sample> out;
  std::string line;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "test_case,solver,task,seed,best_cost,evaluations_used")
        throw ParseError("unexpected samples header", lineno);
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw ParseError("expected 6 fields, got " + std::to_string(f.size()), lineno);
    Sample s{f[0], f[1], f[2], 0, 0.0, 0};
    try {
      std::size_t pos = 0;
      s.seed = std::stoull(f[3], &pos);
      if (pos != f[3].size()) throw std::invalid_argument(f[3]);
      s.best_cost = std::stod(f[4], &pos);
      if (pos != f[4].size()) throw std::invalid_argument(f[4]);
      s.evaluations_used = std::stoull(f[5], &pos);
      if (pos != f[5].size()) throw std::invalid_argument(f[5]);
    } catch (const std::logic_error&) {
      throw ParseError("malformed numeric field", lineno);
    }
    out.push_back(std::move(s));
  }
  if (header) throw ParseError("empty samples file", 0);
  return out;
}

ExperimentReport build_report(const std::vector<Sample>& samples, std::optional<std::string> control) {
  ExperimentReport rep;
  auto index_of = [](std::vector<std::string>& names, const std::string& n) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
    names.push_back(n);
    return names.size() - 1;
  };
  for (const auto& s : samples) {
    if (rep.test_case.empty()) rep.test_case = s.test_case;
    index_of(rep.tasks, s.task);
  }
  // Solvers in canonical order.
  for (auto id : all_solvers()) {
    const std::string n(solver_name(id));
    if (std::any_of(samples.begin(), samples.end(), [&](const Sample& s) { return s.solver == n; }))
      rep.solvers.push_back(n);
  }
  for (const auto& s : samples) index_of(rep.solvers, s.solver);

  const auto T = rep.tasks.size(), S = rep.solvers.size();
  std::vector<std::vector<std::vector<double>>> values(T, std::vector<std::vector<double>>(S));
  std::vector<std::map<std::uint64_t, bool>> seeds(S);
  for (const auto& s : samples) {
    const auto t = index_of(rep.tasks, s.task), j = index_of(rep.solvers, s.solver);
    values[t][j].push_back(s.best_cost);
    seeds[j][s.seed] = true;
  }
  rep.mean.assign(T, std::vector<double>(S, 0.0));
  rep.stdev.assign(T, std::vector<double>(S, 0.0));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < S; ++j) {
      rep.mean[t][j] = mean(values[t][j]);
      rep.stdev[t][j] = stddev(values[t][j]);
    }
  for (std::size_t j = 0; j < S; ++j) rep.runs.push_back(seeds[j].size());

  if (S >= 2 && T >= 2) {
    const auto f = friedman(rep.mean);
    rep.mean_ranks = f.mean_ranks;
    rep.friedman_statistic = f.statistic;
    std::size_t c = S;
    if (control) {
      auto it = std::find(rep.solvers.begin(), rep.solvers.end(), *control);
      if (it == rep.solvers.end()) throw ConfigError("control solver '" + *control + "' has no samples");
      c = static_cast<std::size_t>(it - rep.solvers.begin());
    } else {
      auto it = std::find(rep.solvers.begin(), rep.solvers.end(), std::string(solver_name(SolverId::AtMfcga)));
      c = it != rep.solvers.end() ? static_cast<std::size_t>(it - rep.solvers.begin())
                                  : static_cast<std::size_t>(std::min_element(rep.mean_ranks.begin(),
                                                                              rep.mean_ranks.end()) -
                                                             rep.mean_ranks.begin());
    }
    rep.control = rep.solvers[c];
    rep.holm = holm_posthoc(rep.mean_ranks, T, c);
  }
  return rep;
}

namespace {

SimilarityMatrix empty_matrix(const std::vector<TaskDefinition>& tasks) {
  SimilarityMatrix m;
  for (const auto& t : tasks) m.names.push_back(t.name());
  m.cells.assign(tasks.size(), std::vector<SimilarityCell>(tasks.size()));
  return m;
}

}  // namespace

SimilarityMatrix similarity_report(const std::vector<TaskDefinition>& tasks) {
  auto m = empty_matrix(tasks);
  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (std::size_t j = 0; j < tasks.size(); ++j)
      if (tasks[i].family() == tasks[j].family())
        m.cells[i][j] = {SimilarityCell::Kind::Value, similarity(tasks[i], tasks[j])};
  return m;
}

SimilarityMatrix overlap_report(const std::vector<TaskDefinition>& tasks,
                                const std::vector<std::optional<KnownSolution>>& solutions) {
  if (solutions.size() != tasks.size())
    throw std::invalid_argument("overlap_report: one solution slot per task is required");
  auto m = empty_matrix(tasks);
  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (std::size_t j = 0; j < tasks.size(); ++j) {
      const auto f = tasks[i].family();
      if (f != tasks[j].family() || (f != Family::TSP && f != Family::CVRP)) continue;
      if (!solutions[i] || !solutions[j]) {
        m.cells[i][j].kind = SimilarityCell::Kind::Missing;
        continue;
      }
      const int v = f == Family::TSP
                        ? tour_edge_overlap(tasks[i], solutions[i]->permutation, tasks[j], solutions[j]->permutation)
                        : route_edge_overlap(tasks[i], solutions[i]->routes, tasks[j], solutions[j]->routes);
      m.cells[i][j] = {SimilarityCell::Kind::Value, v};
    }
  return m;
}

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& m) {
  out << "instance";
  for (const auto& n : m.names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    out << m.names[i];
    for (const auto& c : m.cells[i]) {
      out << ',';
      switch (c.kind) {
        case SimilarityCell::Kind::Value: out << c.value; break;
        case SimilarityCell::Kind::NotApplicable: out << "NA"; break;
        case SimilarityCell::Kind::Missing: out << "missing"; break;
      }
    }
    out << '\n';
  }
}

}  // namespace emt
