#pragma once

// Gradient-descent operator on square-summable sequences, truncated to N
// coordinates: (T x)_i = x_i - (1/i^2) phi'(x_i) with phi(x) = 1 - x for
// x < 0 and exp(-x) for x >= 0.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cosmic {

using Vec = std::vector<double>;

/// x - alpha*phi'(x). Throws std::invalid_argument unless alpha is in (0, 1].
double univariate_step(double x, double alpha);

/// x - t(x), computed without cancellation.
double univariate_displacement(double x, double alpha);

class TruncatedGradientOperator {
 public:
  static constexpr std::size_t kDefaultCoords = 512;

  explicit TruncatedGradientOperator(std::size_t n_coords = kDefaultCoords);

  std::size_t n_coords() const { return n_coords_; }

  /// 1 / i^2 for the 1-based coordinate i.
  static double step_size(std::size_t i);

  Vec apply(std::span<const double> x) const;
  void apply(std::span<const double> x, std::span<double> out) const;
  void displacement(std::span<const double> x, std::span<double> out) const;

 private:
  void check_dimension(std::size_t n) const;

  std::size_t n_coords_;
};

/// (log(k+1) + log(alpha), log(k+1) + log(2)).
std::pair<double, double> lemma_bounds(long long k, double alpha);

/// x_0 = 0, x_{k+1} = univariate_step(x_k, alpha); returns x_0 .. x_{k_max}.
std::vector<double> univariate_recursion(double alpha, std::size_t k_max);

}  // namespace cosmic
