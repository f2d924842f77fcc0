#include "cosmic/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosmic/io.hpp"
#include "cosmic/operators.hpp"
#include "cosmic/prox2d.hpp"
#include "cosmic/seqspace.hpp"
#include "cosmic/theorems.hpp"

namespace cosmic {

namespace fs = std::filesystem;

namespace {

fs::path prepare_out_dir(const ExperimentConfig& config) {
  fs::path dir(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_file(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string join(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += format_double(v[i]);
  }
  return s + ")";
}

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
}

}  // namespace

OperatorHandle make_operator(const ExperimentConfig& config) {
  switch (config.op) {
    case OperatorKind::Paper2d:
      return make_paper_2d(PaperParams(config.n_max), config.tolerance("prox"),
                           config.fast_path);
    case OperatorKind::Seqspace:
      return make_sequence_space(config.n_coords);
    case OperatorKind::Translation:
      return make_translation(config.v);
  }
  throw std::invalid_argument("unknown operator");
}

int run2d(const ExperimentConfig& config, std::ostream& out) {
  const Settings described = describe(config);
  const MaxSeparable2D shape = build_paper_operator(PaperParams(config.n_max));
  const OperatorHandle op = make_operator(config);

  double max_step = 0.0;
  double max_gamma_gap = 0.0;
  auto observer = [&](std::size_t, std::span<const double> prev,
                      std::span<const double> next) {
    max_step = std::max(max_step, std::hypot(next[0] - prev[0], next[1] - prev[1]));
    const double phi = eval(shape.phi(), next[0]);
    const double psi = eval(shape.psi(), next[1]);
    max_gamma_gap = std::max(max_gamma_gap, std::abs(phi - psi) / (1.0 + std::abs(phi)));
  };
  const Trajectory traj = iterate(op, config.x0, config.k_max, config.schedule, observer);
  const CosmicReport report =
      cosmic_report(traj, {.min_norm = config.min_norm, .eps_angle = config.eps_angle});

  // The level-matching property holds from the first step on, whatever x0 is.
  const bool step_ok = max_step <= 1.0 + config.tolerance("step");
  const bool gamma_ok = max_gamma_gap <= config.tolerance("gamma");

  const fs::path dir = prepare_out_dir(config);
  {
    auto f = open_file(dir / "trajectory.csv");
    write_trajectory_csv(f, traj, described, true);
  }
  {
    auto f = open_file(dir / "level_trace.csv");
    write_csv_preamble(f, described);
    f << "k,level,x_1,x_2,u_1,u_2\n";
    for (const auto& c : traj.checkpoints) {
      if (std::isnan(c.level)) continue;
      const double r = norm(c.x);
      f << c.k << ',' << format_double(c.level) << ',' << format_double(c.x[0]) << ','
        << format_double(c.x[1]) << ',' << (r > 0 ? format_double(c.x[0] / r) : "") << ','
        << (r > 0 ? format_double(c.x[1] / r) : "") << '\n';
    }
  }
  {
    auto f = open_file(dir / "ball_map.csv");
    write_ball_map_csv(f, traj, described);
  }
  nlohmann::json body = to_json(report);
  body["run"] = {{"steps", traj.steps},
                 {"stopped_by_guard", traj.stopped_by_guard},
                 {"final_iterate", traj.tail_last},
                 {"final_level", level(shape, {traj.tail_last[0], traj.tail_last[1]})},
                 {"max_step_norm", max_step},
                 {"max_gamma_gap", max_gamma_gap},
                 {"step_bound_ok", step_ok},
                 {"gamma_ok", gamma_ok}};
  write_json(dir / "cosmic_report.json", make_document(described, std::move(body)));

  out << "run2d: " << traj.steps << " steps, final level "
      << format_double(level(shape, {traj.tail_last[0], traj.tail_last[1]}))
      << (traj.stopped_by_guard ? " (stopped at the level floor)" : "") << '\n';
  out << "max step norm " << format_double(max_step) << ", max gamma gap "
      << format_double(max_gamma_gap) << '\n';
  out << report.clusters.size() << " cluster(s) from " << report.directions.size()
      << " direction(s)\n";
  for (std::size_t i = 0; i < report.clusters.size(); ++i) {
    out << "  cluster " << i << ": center " << join(report.clusters[i].center) << ", "
        << report.clusters[i].count << " member(s)\n";
  }
  if (!step_ok) out << "FAIL: step norm exceeds 1\n";
  if (!gamma_ok) out << "FAIL: iterates left the level-matching curve\n";
  return step_ok && gamma_ok ? kExitOk : kExitCheckFailed;
}

int runseq(const ExperimentConfig& config, std::ostream& out) {
  const Settings described = describe(config);
  const OperatorHandle op = make_operator(config);
  const Trajectory traj = iterate(op, config.x0, config.k_max, config.schedule);
  const fs::path dir = prepare_out_dir(config);

  {
    auto f = open_file(dir / "snapshots.csv");
    write_snapshot_rows_csv(f, traj, described);
  }

  nlohmann::json snaps = nlohmann::json::array();
  nlohmann::json trend = nlohmann::json::array();
  std::vector<double> ratios;
  for (const auto& c : traj.checkpoints) {
    const double r = norm(c.x);
    snaps.push_back({{"k", c.k}, {"norm", r}, {"x", c.x}});
    if (r > 0.0) {
      ratios.push_back(c.x[0] / r);
      trend.push_back({{"k", c.k}, {"x1_over_norm", ratios.back()}, {"norm", r}});
    }
  }
  bool decreasing = ratios.size() >= 2;
  for (std::size_t i = 1; i < ratios.size(); ++i) decreasing &= ratios[i] < ratios[i - 1];
  write_json(dir / "snapshots.json", make_document(described, {{"snapshots", snaps}}));
  nlohmann::json trend_body = {{"trend", trend}, {"strictly_decreasing", decreasing}};
  if (ratios.size() >= 2) trend_body["last_over_first"] = ratios.back() / ratios.front();
  write_json(dir / "trend.json", make_document(described, std::move(trend_body)));

  out << "runseq: " << traj.steps << " steps, " << traj.checkpoints.size() << " snapshot(s)\n";
  for (const auto& t : trend) {
    out << "  k=" << t["k"].get<std::size_t>() << "  x_1/|x| = "
        << format_double(t["x1_over_norm"].get<double>()) << '\n';
  }

  // Each coordinate runs its own univariate recursion with alpha = 1/i^2,
  // and the logarithmic sandwich is stated for a zero start.
  if (!all_zero(config.x0)) {
    out << "bound audit skipped: it applies to the zero start only\n";
    return kExitOk;
  }
  const double slack = config.tolerance("lemma");
  std::size_t violations = 0;
  {
    auto f = open_file(dir / "bound_audit.csv");
    write_csv_preamble(f, described);
    f << "k,i,lower,x_i,upper,in_bounds\n";
    for (const auto& c : traj.checkpoints) {
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        const auto [lo, hi] = lemma_bounds(static_cast<long long>(c.k),
                                           TruncatedGradientOperator::step_size(i + 1));
        const bool ok = lo - slack <= c.x[i] && c.x[i] <= hi + slack;
        if (!ok) ++violations;
        f << c.k << ',' << (i + 1) << ',' << format_double(lo) << ','
          << format_double(c.x[i]) << ',' << format_double(hi) << ',' << (ok ? 1 : 0) << '\n';
      }
    }
  }
  out << "bound audit: " << violations << " violation(s)\n";
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

int verify(const ExperimentConfig& config, std::ostream& out) {
  const Settings described = describe(config);
  const OperatorHandle op = make_operator(config);
  const SamplingBox box{-config.box, config.box};
  const std::uint64_t seed = config.seed;

  std::vector<std::pair<CheckReport, int>> reports;  // (report, q index or -1)
  reports.emplace_back(
      check_nonexpansive(op, config.samples, box, config.tolerance("nonexpansive"), seed), -1);
  reports.emplace_back(
      check_firmly_nonexpansive(op, config.samples, box, config.tolerance("firm"), seed), -1);
  if (config.op == OperatorKind::Paper2d) {
    reports.emplace_back(
        check_displacement_bound(op, 1.0, config.samples, box, config.tolerance("step"), seed),
        -1);
  }

  const Trajectory traj = iterate(op, config.x0, config.k_max, config.schedule);
  const CosmicReport report =
      cosmic_report(traj, {.min_norm = config.min_norm, .eps_angle = config.eps_angle});
  std::vector<Vec> qs = config.q;
  const bool injected = !qs.empty();
  if (!injected) {
    for (const auto& c : report.clusters) qs.push_back(c.center);
  }

  nlohmann::json body;
  body["direction_source"] = injected ? "config" : "clusters";
  body["directions"] = qs;
  body["v_hat_pazy"] = report.v_hat_pazy;
  body["v_hat_baillon"] = report.v_hat_baillon;

  bool ok = !qs.empty();
  if (qs.empty()) {
    out << "no accumulation directions: no recorded iterate has norm >= "
        << format_double(config.min_norm) << "; raise k_max or lower min_norm\n";
  }
  for (std::size_t j = 0; j < qs.size(); ++j) {
    const int idx = static_cast<int>(j);
    reports.emplace_back(check_separating_hyperplane(op, qs[j], config.samples, box,
                                                     config.tolerance("hyperplane"), seed),
                         idx);
    reports.emplace_back(check_monotone_inner(traj, qs[j], config.tolerance("monotone")), idx);
    if (op.dimension == 2) {
      reports.emplace_back(check_cone_inclusion_2d(qs[j], op, config.samples, box,
                                                   config.tolerance("cone"), seed),
                           idx);
    }
  }
  if (!qs.empty()) {
    reports.emplace_back(check_pairwise_nonneg(qs, config.tolerance("pairwise")), -1);
  }

  nlohmann::json checks = nlohmann::json::array();
  out << std::left << std::setw(24) << "check" << std::setw(4) << "q" << std::setw(26)
      << "worst_violation" << std::setw(12) << "tolerance" << "result\n";
  for (const auto& [r, idx] : reports) {
    ok &= r.pass;
    nlohmann::json j = to_json(r);
    if (idx >= 0) j["q_index"] = idx;
    checks.push_back(std::move(j));
    out << std::setw(24) << r.name << std::setw(4) << (idx >= 0 ? std::to_string(idx) : "-")
        << std::setw(26) << format_double(r.worst_violation) << std::setw(12)
        << format_double(r.tolerance) << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  for (std::size_t j = 0; j < qs.size(); ++j) out << "q" << j << " = " << join(qs[j]) << '\n';
  body["checks"] = std::move(checks);
  body["pass"] = ok;

  const fs::path dir = prepare_out_dir(config);
  write_json(dir / "verify_report.json", make_document(described, std::move(body)));
  return ok ? kExitOk : kExitCheckFailed;
}

int export_operator(const ExperimentConfig& config, std::ostream& out) {
  const Settings described = describe(config);
  const fs::path dir = prepare_out_dir(config);
  nlohmann::json op;
  switch (config.op) {
    case OperatorKind::Paper2d:
      op = to_json(build_paper_operator(PaperParams(config.n_max)), config.n_max);
      op["type"] = "paper2d";
      break;
    case OperatorKind::Seqspace:
      op = {{"type", "seqspace"},
            {"n_coords", config.n_coords},
            {"phi", "1 - x for x < 0, exp(-x) for x >= 0"},
            {"step_size", "1/i^2"}};
      break;
    case OperatorKind::Translation:
      op = {{"type", "translation"}, {"v", config.v}};
      break;
  }
  write_json(dir / "operator.json", make_document(described, {{"operator", op}}));
  out << "wrote " << (dir / "operator.json").string() << '\n';

  if (config.op == OperatorKind::Paper2d) {
    auto f = open_file(dir / "analytic_sequence.csv");
    write_csv_preamble(f, described);
    f << "n,xi,zeta,u_1,u_2\n";
    for (int n = 1; n <= PaperParams::kMaxDepth; ++n) {
      const Point2 d = analytic_direction(n);
      f << n << ',' << format_double(xi(n)) << ',' << format_double(zeta(n)) << ','
        << format_double(d[0]) << ',' << format_double(d[1]) << '\n';
    }
    out << "wrote " << (dir / "analytic_sequence.csv").string() << '\n';
  }
  return kExitOk;
}

int run_command(Command cmd, const Settings& settings, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = resolve(settings, cmd);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    switch (cmd) {
      case Command::Run2d: return run2d(config, out);
      case Command::RunSeq: return runseq(config, out);
      case Command::Verify: return verify(config, out);
      case Command::Export: return export_operator(config, out);
    }
  } catch (const std::logic_error& e) {
    // Parameters that passed parsing but are rejected by the operator, such
    // as a start point outside the represented range.
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace cosmic
