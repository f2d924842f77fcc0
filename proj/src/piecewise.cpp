#include "cosmic/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace cosmic {

namespace {

void require_strictly_ascending(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw std::invalid_argument(std::string(what) + " must be finite");
    }
    if (i > 0 && !(xs[i - 1] < xs[i])) {
      throw std::invalid_argument(std::string(what) + " must be strictly ascending");
    }
  }
}

void require_unit_negative_nondecreasing(const std::vector<double>& vs,
                                         const char* what) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!(vs[i] >= -1.0 && vs[i] < 0.0)) {
      throw std::invalid_argument(std::string(what) + " must lie in [-1, 0)");
    }
    if (i > 0 && vs[i] < vs[i - 1]) {
      throw std::invalid_argument(std::string(what) + " must be nondecreasing");
    }
  }
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("step function needs at least one value");
  }
  if (values_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("step function needs one more value than breakpoints");
  }
  require_strictly_ascending(breakpoints_, "breakpoints");
  require_unit_negative_nondecreasing(values_, "step values");
}

double StepFunction::operator()(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

PiecewiseLinearConvexFn::PiecewiseLinearConvexFn(std::vector<double> knots,
                                                 std::vector<double> knot_values,
                                                 std::vector<double> slopes)
    : knots_(std::move(knots)),
      knot_values_(std::move(knot_values)),
      slopes_(std::move(slopes)) {
  if (knots_.empty()) {
    throw std::invalid_argument("piecewise-linear function needs at least one knot");
  }
  if (knot_values_.size() != knots_.size() || slopes_.size() != knots_.size() + 1) {
    throw std::invalid_argument(
        "need one value per knot and one more slope than knots");
  }
  require_strictly_ascending(knots_, "knots");
  require_unit_negative_nondecreasing(slopes_, "slopes");
  for (std::size_t j = 0; j < knot_values_.size(); ++j) {
    if (!std::isfinite(knot_values_[j])) {
      throw std::invalid_argument("knot values must be finite");
    }
  }
  for (std::size_t j = 1; j < knots_.size(); ++j) {
    const double rise = slopes_[j] * (knots_[j] - knots_[j - 1]);
    const double expected = knot_values_[j - 1] + rise;
    const double scale = std::max({std::abs(knot_values_[j - 1]),
                                   std::abs(knot_values_[j]), std::abs(rise)});
    if (std::abs(expected - knot_values_[j]) > kConsistencyTol * scale) {
      throw std::invalid_argument("knot values inconsistent with slopes at knot " +
                                  std::to_string(j));
    }
  }
}

std::size_t PiecewiseLinearConvexFn::segment_of(double x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  return static_cast<std::size_t>(it - knots_.begin());
}

double PiecewiseLinearConvexFn::eval_on_segment(std::size_t j, double x) const {
  if (j == 0) return knot_values_[0] + slopes_[0] * (x - knots_[0]);
  return knot_values_[j - 1] + slopes_[j] * (x - knots_[j - 1]);
}

PiecewiseLinearConvexFn antiderivative(const StepFunction& s) {
  std::vector<double> knots = s.breakpoints();
  if (!std::binary_search(knots.begin(), knots.end(), 0.0)) {
    knots.insert(std::upper_bound(knots.begin(), knots.end(), 0.0), 0.0);
  }

  std::vector<double> slopes(knots.size() + 1);
  slopes[0] = s.values().front();
  for (std::size_t j = 1; j < slopes.size(); ++j) slopes[j] = s(knots[j - 1]);

  const auto origin = static_cast<std::size_t>(
      std::lower_bound(knots.begin(), knots.end(), 0.0) - knots.begin());
  std::vector<double> values(knots.size());
  values[origin] = 0.0;
  for (std::size_t j = origin + 1; j < knots.size(); ++j) {
    values[j] = values[j - 1] + slopes[j] * (knots[j] - knots[j - 1]);
  }
  for (std::size_t j = origin; j-- > 0;) {
    values[j] = values[j + 1] - slopes[j + 1] * (knots[j + 1] - knots[j]);
  }
  return {std::move(knots), std::move(values), std::move(slopes)};
}

double eval(const PiecewiseLinearConvexFn& F, double x) {
  return F.eval_on_segment(F.segment_of(x), x);
}

double invert(const PiecewiseLinearConvexFn& F, double t) {
  const auto& v = F.knot_values();
  const auto& k = F.knots();
  if (!(t <= v.front() && t >= v.back())) {
    throw std::out_of_range("level " + std::to_string(t) +
                            " outside the represented range of the function");
  }
  // Knot values are strictly decreasing.
  const auto j = static_cast<std::size_t>(
      std::lower_bound(v.begin(), v.end(), t, std::greater<>()) - v.begin());
  if (v[j] == t) return k[j];
  const double x = k[j - 1] + (t - v[j - 1]) / F.slopes()[j];
  return std::clamp(x, k[j - 1], k[j]);
}

std::pair<double, double> subgradient_interval(const PiecewiseLinearConvexFn& F,
                                               double x) {
  const std::size_t j = F.segment_of(x);
  const auto& s = F.slopes();
  if (j > 0 && F.knots()[j - 1] == x) return {s[j - 1], s[j]};
  return {s[j], s[j]};
}

Prox1dResult prox_1d_detail(const PiecewiseLinearConvexFn& F, double lambda,
                            double xprime) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("prox weight must be >= 0");
  const auto& k = F.knots();
  const auto& s = F.slopes();
  const std::size_t m = k.size();

  // z -> z + lambda*F'(z) is increasing; its right limit at knot j is
  // k_j + lambda*s_{j+1}. Find the first knot whose right limit reaches xprime.
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (k[mid] + lambda * s[mid + 1] >= xprime) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t j = lo;
  if (j < m && k[j] + lambda * s[j] <= xprime) {
    return {k[j], xprime - k[j], {ProxPiece::Kind::Knot, j}};
  }
  const double shift = lambda * s[j];
  return {xprime - shift, shift, {ProxPiece::Kind::Segment, j}};
}

double prox_1d(const PiecewiseLinearConvexFn& F, double lambda, double xprime) {
  return prox_1d_detail(F, lambda, xprime).z;
}

nlohmann::json to_json(const StepFunction& s) {
  return {{"breakpoints", s.breakpoints()}, {"values", s.values()}};
}

nlohmann::json to_json(const PiecewiseLinearConvexFn& F) {
  return {{"knots", F.knots()},
          {"knot_values", F.knot_values()},
          {"slopes", F.slopes()}};
}

StepFunction step_function_from_json(const nlohmann::json& j) {
  return {j.at("breakpoints").get<std::vector<double>>(),
          j.at("values").get<std::vector<double>>()};
}

PiecewiseLinearConvexFn piecewise_linear_from_json(const nlohmann::json& j) {
  return {j.at("knots").get<std::vector<double>>(),
          j.at("knot_values").get<std::vector<double>>(),
          j.at("slopes").get<std::vector<double>>()};
}

}  // namespace cosmic
