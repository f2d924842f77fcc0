#include "cosmic/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cosmic {

namespace {

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_index(std::string_view text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not an iteration index: '" + std::string(text) + "'");
  }
  return value;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::size_t> geometric_indices(double ratio, std::size_t k_max) {
  if (!(ratio > 1.0)) throw std::invalid_argument("geometric ratio must exceed 1");
  std::vector<std::size_t> out;
  for (double p = 1.0; p <= static_cast<double>(k_max); p *= ratio) {
    const auto k = static_cast<std::size_t>(std::ceil(p - 1e-9 * p));
    if (out.empty() || out.back() != k) out.push_back(k);
  }
  return out;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch in dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec OperatorHandle::operator()(std::span<const double> x) const {
  if (x.size() != dimension) throw std::invalid_argument("dimension mismatch in " + label);
  Vec out(dimension);
  apply(x, out);
  return out;
}

Vec OperatorHandle::displacement_at(std::span<const double> x) const {
  if (x.size() != dimension) throw std::invalid_argument("dimension mismatch in " + label);
  Vec out(dimension);
  if (displacement) {
    displacement(x, out);
  } else {
    apply(x, out);
    for (std::size_t i = 0; i < dimension; ++i) out[i] = x[i] - out[i];
  }
  return out;
}

Schedule parse_schedule(std::string_view text) {
  if (text == "levels") return LevelCrossingSchedule{};
  if (text.starts_with("geometric:")) {
    const double ratio = parse_double(text.substr(10));
    if (!(ratio > 1.0)) throw std::invalid_argument("geometric ratio must exceed 1");
    return GeometricSchedule{ratio};
  }
  if (text.starts_with("list:")) {
    ExplicitSchedule s;
    std::string_view rest = text.substr(5);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      s.indices.push_back(parse_index(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (s.indices.empty()) throw std::invalid_argument("empty schedule list");
    return s;
  }
  throw std::invalid_argument("unknown schedule '" + std::string(text) +
                              "' (expected geometric:RHO, levels or list:K1,K2,...)");
}

std::string to_string(const Schedule& schedule) {
  if (const auto* g = std::get_if<GeometricSchedule>(&schedule)) {
    return "geometric:" + shortest(g->ratio);
  }
  if (std::holds_alternative<LevelCrossingSchedule>(schedule)) return "levels";
  std::string out = "list:";
  const auto& idx = std::get<ExplicitSchedule>(schedule).indices;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(idx[i]);
  }
  return out;
}

Trajectory iterate(const OperatorHandle& op, std::span<const double> x0,
                   std::size_t k_max, const Schedule& schedule,
                   const StepObserver& observer) {
  if (x0.size() != op.dimension) {
    throw std::invalid_argument("start point has dimension " + std::to_string(x0.size()) +
                                ", operator " + op.label + " expects " +
                                std::to_string(op.dimension));
  }
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

  const bool by_level = std::holds_alternative<LevelCrossingSchedule>(schedule);
  if (by_level && !op.level) {
    throw std::invalid_argument("level-crossing schedule needs an operator with a level");
  }
  std::vector<std::size_t> indices;
  if (const auto* g = std::get_if<GeometricSchedule>(&schedule)) {
    indices = geometric_indices(g->ratio, k_max);
  } else if (const auto* e = std::get_if<ExplicitSchedule>(&schedule)) {
    indices = e->indices;
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  }

  Trajectory traj;
  traj.label = op.label;
  traj.start.assign(x0.begin(), x0.end());

  const bool track_level = static_cast<bool>(op.level);
  double lvl = track_level ? op.level(x0) : std::numeric_limits<double>::quiet_NaN();
  double target = by_level ? std::min(-1.0, std::ceil(lvl) - 1.0) : 0.0;

  std::size_t next_index = 0;
  if (!indices.empty() && indices.front() == 0) {
    traj.checkpoints.push_back({0, traj.start, {}, lvl});
    next_index = 1;
  }

  Vec cur = traj.start;
  Vec nxt(op.dimension);
  for (std::size_t k = 1; k <= k_max; ++k) {
    op.apply(cur, nxt);
    if (observer) observer(k, cur, nxt);
    if (track_level) lvl = op.level(nxt);

    bool record = false;
    if (by_level) {
      if (lvl <= target) {
        record = true;
        target = std::min(target, std::ceil(lvl) - 1.0);
      }
    } else if (next_index < indices.size() && indices[next_index] == k) {
      record = true;
      ++next_index;
    }
    if (record) {
      Vec step(op.dimension);
      for (std::size_t i = 0; i < op.dimension; ++i) step[i] = nxt[i] - cur[i];
      traj.checkpoints.push_back({k, nxt, std::move(step), lvl});
    }

    traj.steps = k;
    std::swap(cur, nxt);
    if (op.level_floor && track_level && lvl <= *op.level_floor) {
      traj.stopped_by_guard = true;
      break;
    }
  }
  traj.tail_last = std::move(cur);
  traj.tail_prev = std::move(nxt);
  if (op.displacement) {
    traj.tail_displacement.resize(op.dimension);
    op.displacement(traj.tail_prev, traj.tail_displacement);
  } else {
    traj.tail_displacement.resize(op.dimension);
    for (std::size_t i = 0; i < op.dimension; ++i) {
      traj.tail_displacement[i] = traj.tail_prev[i] - traj.tail_last[i];
    }
  }
  return traj;
}

std::vector<Direction> directions(const Trajectory& traj, double min_norm) {
  if (!(min_norm > 0.0)) throw std::invalid_argument("min_norm must be positive");
  std::vector<Direction> out;
  for (const auto& c : traj.checkpoints) {
    const double n = norm(c.x);
    if (n < min_norm) continue;
    Vec u(c.x.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = c.x[i] / n;
    out.push_back({c.k, std::move(u)});
  }
  return out;
}

std::vector<DirectionCluster> cluster_directions(const std::vector<Vec>& dirs,
                                                 double eps_angle) {
  if (!(eps_angle > 0.0 && eps_angle < std::numbers::pi / 2)) {
    throw std::invalid_argument("eps_angle must lie in (0, pi/2)");
  }
  std::vector<std::size_t> founders;
  std::vector<Vec> sums;
  std::vector<std::size_t> counts;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const Vec& u = dirs[d];
    const double nu = norm(u);
    std::size_t hit = founders.size();
    for (std::size_t c = 0; c < founders.size(); ++c) {
      const Vec& f = dirs[founders[c]];
      const double cosine = std::clamp(dot(u, f) / (nu * norm(f)), -1.0, 1.0);
      if (std::acos(cosine) <= eps_angle) {
        hit = c;
        break;
      }
    }
    if (hit == founders.size()) {
      founders.push_back(d);
      sums.emplace_back(u.size(), 0.0);
      counts.push_back(0);
    }
    for (std::size_t i = 0; i < u.size(); ++i) sums[hit][i] += u[i] / nu;
    ++counts[hit];
  }

  std::vector<DirectionCluster> out;
  for (std::size_t c = 0; c < founders.size(); ++c) {
    Vec center = sums[c];
    const double n = norm(center);
    for (double& v : center) v /= n;
    out.push_back({std::move(center), counts[c]});
  }
  return out;
}

DisplacementEstimates min_displacement_estimates(const Trajectory& traj) {
  if (traj.steps == 0) throw std::invalid_argument("trajectory has no steps");
  const auto K = static_cast<double>(traj.steps);
  DisplacementEstimates est;
  est.pazy.resize(traj.tail_last.size());
  est.baillon.resize(traj.tail_last.size());
  for (std::size_t i = 0; i < traj.tail_last.size(); ++i) {
    est.pazy[i] = -traj.tail_last[i] / K;
    est.baillon[i] = traj.tail_displacement.empty()
                         ? traj.tail_prev[i] - traj.tail_last[i]
                         : traj.tail_displacement[i];
  }
  return est;
}

Vec ball_map(std::span<const double> x) {
  const double scale = 1.0 / (1.0 + norm(x));
  Vec out(x.begin(), x.end());
  for (double& v : out) v *= scale;
  return out;
}

CosmicReport cosmic_report(const Trajectory& traj, const AnalysisOptions& options) {
  CosmicReport report;
  report.directions = directions(traj, options.min_norm);
  std::vector<Vec> tail;
  for (std::size_t i = report.directions.size() / 2; i < report.directions.size(); ++i) {
    tail.push_back(report.directions[i].unit);
  }
  report.clusters = cluster_directions(tail, options.eps_angle);
  if (traj.steps > 0) {
    auto est = min_displacement_estimates(traj);
    report.v_hat_pazy = std::move(est.pazy);
    report.v_hat_baillon = std::move(est.baillon);
  }
  return report;
}

nlohmann::json to_json(const Trajectory& traj) {
  nlohmann::json checkpoints = nlohmann::json::array();
  for (const auto& c : traj.checkpoints) {
    checkpoints.push_back(
        {{"k", c.k}, {"x", c.x}, {"step", c.step}, {"level", number_or_null(c.level)}});
  }
  return {{"label", traj.label},
          {"start", traj.start},
          {"steps", traj.steps},
          {"stopped_by_guard", traj.stopped_by_guard},
          {"checkpoints", std::move(checkpoints)},
          {"tail_prev", traj.tail_prev},
          {"tail_last", traj.tail_last},
          {"tail_displacement", traj.tail_displacement}};
}

nlohmann::json to_json(const CosmicReport& report) {
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& d : report.directions) dirs.push_back({{"k", d.k}, {"unit", d.unit}});
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& c : report.clusters) {
    clusters.push_back({{"center", c.center}, {"count", c.count}});
  }
  return {{"directions", std::move(dirs)},
          {"clusters", std::move(clusters)},
          {"v_hat_pazy", report.v_hat_pazy},
          {"v_hat_baillon", report.v_hat_baillon}};
}

}  // namespace cosmic
