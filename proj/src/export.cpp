#include "emt/export.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace emt {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void header(std::ostream& out, const char* first, const std::vector<std::string>& names) {
  out << first;
  for (const auto& n : names) out << ',' << n;
  out << '\n';
}

}  // namespace

void write_report_json(std::ostream& out, const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["test_case"] = report.test_case;
  j["solvers"] = report.solvers;
  j["runs"] = report.runs;
  auto& tasks = j["tasks"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < report.tasks.size(); ++t) {
    nlohmann::ordered_json row;
    row["task"] = report.tasks[t];
    for (std::size_t s = 0; s < report.solvers.size(); ++s)
      row["results"][report.solvers[s]] = {{"mean", report.mean[t][s]}, {"std", report.stdev[t][s]}};
    tasks.push_back(row);
  }
  if (report.friedman_statistic) {
    auto& f = j["friedman"];
    for (std::size_t s = 0; s < report.solvers.size(); ++s) f["mean_ranks"][report.solvers[s]] = report.mean_ranks[s];
    f["statistic"] = *report.friedman_statistic;
    f["degrees_of_freedom"] = report.solvers.size() - 1;
    auto& h = j["holm"];
    h["control"] = *report.control;
    h["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.holm)
      h["rows"].push_back({{"solver", report.solvers[r.solver]},
                           {"z", r.z},
                           {"p_unadjusted", r.p_unadjusted},
                           {"p_adjusted", r.p_adjusted}});
  }
  out << j.dump(2) << '\n';
}

void write_run_json(std::ostream& out, const RunResult& result, const std::vector<std::string>& task_names) {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["solver"] = std::string(solver_name(result.solver));
  j["seed"] = result.seed;
  j["evaluations"] = result.evaluations;
  j["generations"] = result.generations;
  j["inter_task_crossovers"] = result.inter_task_crossovers;
  j["intra_task_crossovers"] = result.intra_task_crossovers;
  auto& best = j["best"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < task_names.size(); ++k)
    best.push_back({{"task", task_names[k]},
                    {"cost", result.best_costs.at(k)},
                    {"genome", to_csv_list(result.best_genomes.at(k))}});
  out << j.dump(2) << '\n';
}

void write_convergence_csv(std::ostream& out, const RunResult& result, const std::vector<std::string>& task_names) {
  header(out, "generation", task_names);
  for (std::size_t g = 0; g < result.trace.size(); ++g) {
    out << g + 1;
    for (double v : result.trace[g]) out << ',' << num(v);
    out << '\n';
  }
}

void write_transfer_history_csv(std::ostream& out, const RunResult& result,
                                const std::vector<std::string>& task_names) {
  out << "generation,donor";
  for (const auto& n : task_names) out << ',' << n;
  out << '\n';
  for (std::size_t g = 0; g < result.transfer_history.size(); ++g) {
    const auto& m = result.transfer_history[g];
    for (std::size_t d = 0; d < m.num_tasks(); ++d) {
      out << g + 1 << ',' << task_names.at(d);
      for (std::size_t r = 0; r < m.num_tasks(); ++r) out << ',' << m.at(d, r);
      out << '\n';
    }
  }
}

void write_grid_snapshots_csv(std::ostream& out, const RunResult& result) {
  std::size_t cols = result.grid_snapshots.empty() ? 0 : result.grid_snapshots.front().cols;
  out << "rebuild,generation,row";
  for (std::size_t c = 0; c < cols; ++c) out << ",c" << c;
  out << '\n';
  for (const auto& s : result.grid_snapshots)
    for (std::size_t r = 0; r < s.rows; ++r) {
      out << s.rebuild_index << ',' << s.generation << ',' << r;
      for (std::size_t c = 0; c < s.cols; ++c) out << ',' << s.skills[r * s.cols + c];
      out << '\n';
    }
}

void write_transfer_events_csv(std::ostream& out, const std::vector<TransferEvent>& events,
                               const std::vector<std::string>& task_names) {
  out << "generation,donor,receiver\n";
  for (const auto& e : events)
    out << e.generation << ',' << task_names.at(e.donor_skill) << ',' << task_names.at(e.receiver_skill) << '\n';
}

void write_rmp_history_csv(std::ostream& out, const RunResult& result, const std::vector<std::string>& task_names) {
  const auto K = task_names.size();
  out << "generation";
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = a + 1; b < K; ++b) out << ',' << task_names[a] << '|' << task_names[b];
  out << '\n';
  for (std::size_t g = 0; g < result.rmp_history.size(); ++g) {
    out << g + 1;
    for (std::size_t a = 0; a < K; ++a)
      for (std::size_t b = a + 1; b < K; ++b) out << ',' << num(result.rmp_history[g][a * K + b]);
    out << '\n';
  }
}

}  // namespace emt
