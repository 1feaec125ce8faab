#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "emt/harness.hpp"
#include "emt/solvers.hpp"

namespace emt {

inline constexpr int kFormatVersion = 1;

// Report JSON: per-task mean/std per solver, Friedman ranks and statistic,
// Holm rows against the control.
void write_report_json(std::ostream& out, const ExperimentReport& report);

// Best costs and genomes of one run, keyed by task name.
void write_run_json(std::ostream& out, const RunResult& result, const std::vector<std::string>& task_names);

// generation,<task...>: best-so-far cost per task after each generation.
void write_convergence_csv(std::ostream& out, const RunResult& result, const std::vector<std::string>& task_names);

// generation,donor,<receiver task...>: one K x K block per generation.
void write_transfer_history_csv(std::ostream& out, const RunResult& result,
                                const std::vector<std::string>& task_names);

// rebuild,generation,row,c0..: one rows x cols block of skill indices per snapshot.
void write_grid_snapshots_csv(std::ostream& out, const RunResult& result);

// generation,donor,receiver: one line per crossover win.
void write_transfer_events_csv(std::ostream& out, const std::vector<TransferEvent>& events,
                               const std::vector<std::string>& task_names);

// generation,<a>-<b>...: upper triangle of the RMP matrix after each generation.
void write_rmp_history_csv(std::ostream& out, const RunResult& result, const std::vector<std::string>& task_names);

}  // namespace emt
