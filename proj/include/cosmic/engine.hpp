#pragma once

// Fixed-point iteration driver x^{k+1} = T(x^k) for non-expansive operators,
// with sparse checkpointing and the analyses run on the result: normalized
// directions, greedy direction clustering, minimal-displacement estimates.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cosmic {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// A map R^d -> R^d the caller declares non-expansive.
struct OperatorHandle {
  using Map = std::function<void(std::span<const double>, std::span<double>)>;

  std::size_t dimension = 0;
  std::string label;
  Map apply;
  /// Optional x - T(x) computed without cancellation. Must agree with
  /// `apply`; when empty it is formed as x - apply(x).
  Map displacement;
  /// Optional scalar level; enables level-crossing schedules.
  std::function<double(std::span<const double>)> level;
  /// Iteration stops once the level drops to or below this value.
  std::optional<double> level_floor;

  Vec operator()(std::span<const double> x) const;
  Vec displacement_at(std::span<const double> x) const;
};

struct GeometricSchedule {
  double ratio;
};
struct LevelCrossingSchedule {};
struct ExplicitSchedule {
  std::vector<std::size_t> indices;
};
using Schedule = std::variant<GeometricSchedule, LevelCrossingSchedule, ExplicitSchedule>;

/// "geometric:RHO", "levels" or "list:K1,K2,...".
Schedule parse_schedule(std::string_view text);
std::string to_string(const Schedule& schedule);

struct Checkpoint {
  std::size_t k;
  Vec x;
  /// x^k - x^{k-1}; empty for k = 0.
  Vec step;
  double level = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
  std::string label;
  Vec start;
  std::vector<Checkpoint> checkpoints;
  Vec tail_prev;  ///< x^{K-1}
  Vec tail_last;  ///< x^K
  /// x^{K-1} - x^K, from the operator's displacement map when it has one.
  Vec tail_displacement;
  std::size_t steps = 0;  ///< K
  bool stopped_by_guard = false;
};

/// Called after every application with (k+1, x^k, x^{k+1}).
using StepObserver = std::function<void(std::size_t, std::span<const double>,
                                        std::span<const double>)>;

/// Runs k_max applications of op from x0, or fewer if the operator's level
/// floor is reached (reported through Trajectory::stopped_by_guard).
Trajectory iterate(const OperatorHandle& op, std::span<const double> x0,
                   std::size_t k_max, const Schedule& schedule,
                   const StepObserver& observer = {});

struct Direction {
  std::size_t k;
  Vec unit;
};

/// Unit vectors x^k / |x^k| for the checkpoints with |x^k| >= min_norm.
std::vector<Direction> directions(const Trajectory& traj, double min_norm);

struct DirectionCluster {
  Vec center;
  std::size_t count;
};

/// Greedy clustering: each direction joins the first center within
/// eps_angle (radians) of it, else founds a new one. Centers start as their
/// founding direction and are replaced by the normalized member mean once
/// assignment is done. eps_angle must lie in (0, pi/2).
std::vector<DirectionCluster> cluster_directions(const std::vector<Vec>& dirs,
                                                 double eps_angle);

struct DisplacementEstimates {
  Vec pazy;     ///< -x^K / K
  Vec baillon;  ///< x^{K-1} - x^K
};

DisplacementEstimates min_displacement_estimates(const Trajectory& traj);

/// x / (1 + |x|): a bijection onto the open unit ball.
Vec ball_map(std::span<const double> x);

struct AnalysisOptions {
  double min_norm = 10.0;
  double eps_angle = 0.1;
};

struct CosmicReport {
  std::vector<Direction> directions;
  /// Built from the later half of `directions` only.
  std::vector<DirectionCluster> clusters;
  Vec v_hat_pazy;
  Vec v_hat_baillon;
};

CosmicReport cosmic_report(const Trajectory& traj, const AnalysisOptions& options);

nlohmann::json to_json(const Trajectory& traj);
nlohmann::json to_json(const CosmicReport& report);

}  // namespace cosmic
