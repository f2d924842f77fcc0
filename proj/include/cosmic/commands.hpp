#pragma once

// The four subcommands behind the command-line tool. Each takes a resolved
// configuration, writes its files under config.out_dir and returns the exit
// code: 0 on success, 1 when a check fails.

#include <iosfwd>

#include "cosmic/config.hpp"
#include "cosmic/engine.hpp"

namespace cosmic {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

OperatorHandle make_operator(const ExperimentConfig& config);

/// trajectory.csv, level_trace.csv, ball_map.csv, cosmic_report.json.
int run2d(const ExperimentConfig& config, std::ostream& out);

/// snapshots.csv, snapshots.json, trend.json, bound_audit.csv.
int runseq(const ExperimentConfig& config, std::ostream& out);

/// verify_report.json, plus a table on `out`.
int verify(const ExperimentConfig& config, std::ostream& out);

/// operator.json, and analytic_sequence.csv for paper2d.
int export_operator(const ExperimentConfig& config, std::ostream& out);

/// Resolves `settings` for `cmd` and dispatches. Configuration problems are
/// reported on `err` and give kExitConfigError.
int run_command(Command cmd, const Settings& settings, std::ostream& out, std::ostream& err);

}  // namespace cosmic
