#pragma once

// Piecewise-constant derivatives and their piecewise-linear convex
// antiderivatives on the real line, with exact 1-D proximal operators.

#include <cstddef>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cosmic {

/// Nondecreasing step function with values in [-1, 0).
///
/// values()[j] applies on [b_j, b_{j+1}) where b_0 = -inf and
/// b_{m+1} = +inf, so there is one more value than breakpoints.
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double x) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Convex, strictly decreasing, 1-Lipschitz piecewise-linear function.
///
/// Segment j (0 <= j <= m) has slope slopes()[j] and covers
/// [knot_{j-1}, knot_j), with knot_{-1} = -inf and knot_m = +inf. Knot values
/// are stored alongside the slopes so evaluation is O(log m); the constructor
/// checks that the two agree.
class PiecewiseLinearConvexFn {
 public:
  static constexpr double kConsistencyTol = 1e-12;

  PiecewiseLinearConvexFn(std::vector<double> knots,
                          std::vector<double> knot_values,
                          std::vector<double> slopes);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& knot_values() const { return knot_values_; }
  const std::vector<double>& slopes() const { return slopes_; }
  std::size_t num_segments() const { return slopes_.size(); }

  /// Index of the segment containing x (knots belong to the segment on
  /// their right).
  std::size_t segment_of(double x) const;

  /// Affine form a*x + c of segment j, evaluated at x.
  double eval_on_segment(std::size_t j, double x) const;

  double max_represented() const { return knot_values_.front(); }
  double min_represented() const { return knot_values_.back(); }

 private:
  std::vector<double> knots_;
  std::vector<double> knot_values_;
  std::vector<double> slopes_;
};

PiecewiseLinearConvexFn antiderivative(const StepFunction& s);

double eval(const PiecewiseLinearConvexFn& F, double x);

/// The unique x with F(x) = t. Throws std::out_of_range when t lies outside
/// [F(last knot), F(first knot)].
double invert(const PiecewiseLinearConvexFn& F, double t);

/// Closed interval [left slope, right slope] of the subdifferential at x.
std::pair<double, double> subgradient_interval(const PiecewiseLinearConvexFn& F,
                                               double x);

/// Which linear piece of z -> z + lambda*F'(z) the prox lands on. A
/// segment piece moves with xprime; a knot piece pins z to the knot.
struct ProxPiece {
  enum class Kind { Segment, Knot };
  Kind kind;
  std::size_t index;

  friend bool operator==(const ProxPiece&, const ProxPiece&) = default;
};

struct Prox1dResult {
  double z;
  /// xprime - z, i.e. lambda times the subgradient selected at z. On a
  /// segment piece it is formed as lambda*slope, without cancellation.
  double shift;
  ProxPiece piece;
};

Prox1dResult prox_1d_detail(const PiecewiseLinearConvexFn& F, double lambda,
                            double xprime);

/// argmin_z lambda*F(z) + (z - xprime)^2 / 2.
double prox_1d(const PiecewiseLinearConvexFn& F, double lambda, double xprime);

// JSON: {breakpoints:[...], values:[...]} and
// {knots:[...], knot_values:[...], slopes:[...]}.
nlohmann::json to_json(const StepFunction& s);
nlohmann::json to_json(const PiecewiseLinearConvexFn& F);
StepFunction step_function_from_json(const nlohmann::json& j);
PiecewiseLinearConvexFn piecewise_linear_from_json(const nlohmann::json& j);

}  // namespace cosmic
