#include "cosmic/seqspace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cosmic {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("step size must lie in (0, 1]");
  }
}

}  // namespace

double univariate_step(double x, double alpha) {
  check_alpha(alpha);
  return x - univariate_displacement(x, alpha);
}

double univariate_displacement(double x, double alpha) {
  check_alpha(alpha);
  return x < 0.0 ? -alpha : -alpha * std::exp(-x);
}

TruncatedGradientOperator::TruncatedGradientOperator(std::size_t n_coords)
    : n_coords_(n_coords) {
  if (n_coords_ == 0) throw std::invalid_argument("need at least one coordinate");
}

double TruncatedGradientOperator::step_size(std::size_t i) {
  const auto d = static_cast<double>(i);
  return 1.0 / (d * d);
}

void TruncatedGradientOperator::check_dimension(std::size_t n) const {
  if (n != n_coords_) {
    throw std::invalid_argument("expected " + std::to_string(n_coords_) +
                                " coordinates, got " + std::to_string(n));
  }
}

Vec TruncatedGradientOperator::apply(std::span<const double> x) const {
  Vec out(x.size());
  apply(x, out);
  return out;
}

void TruncatedGradientOperator::apply(std::span<const double> x,
                                      std::span<double> out) const {
  check_dimension(x.size());
  check_dimension(out.size());
  for (std::size_t i = 0; i < n_coords_; ++i) {
    out[i] = univariate_step(x[i], step_size(i + 1));
  }
}

void TruncatedGradientOperator::displacement(std::span<const double> x,
                                             std::span<double> out) const {
  check_dimension(x.size());
  check_dimension(out.size());
  for (std::size_t i = 0; i < n_coords_; ++i) {
    out[i] = univariate_displacement(x[i], step_size(i + 1));
  }
}

std::pair<double, double> lemma_bounds(long long k, double alpha) {
  check_alpha(alpha);
  if (k < 0) throw std::invalid_argument("iteration index must be >= 0");
  const double base = std::log(static_cast<double>(k) + 1.0);
  return {base + std::log(alpha), base + std::log(2.0)};
}

std::vector<double> univariate_recursion(double alpha, std::size_t k_max) {
  check_alpha(alpha);
  std::vector<double> xs(k_max + 1);
  xs[0] = 0.0;
  for (std::size_t k = 0; k < k_max; ++k) xs[k + 1] = univariate_step(xs[k], alpha);
  return xs;
}

}  // namespace cosmic
