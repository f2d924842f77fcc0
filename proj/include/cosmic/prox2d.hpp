#pragma once

// Proximal operator of f(x, y) = max{Phi(x), Psi(y)} for piecewise-linear,
// convex, strictly decreasing Phi and Psi, and the specific Phi/Psi pair
// whose prox iteration has two cosmic accumulation directions.

#include <array>
#include <cstddef>

#include <json.hpp>

#include "cosmic/piecewise.hpp"

namespace cosmic {

using Point2 = std::array<double, 2>;

/// Operator data for Prox_f with f(x, y) = max{Phi(x), Psi(y)}.
class MaxSeparable2D {
 public:
  /// Both functions must vanish at 0, so that the origin lies on the
  /// level-matching curve {Phi(x) = Psi(y) <= 0}.
  MaxSeparable2D(PiecewiseLinearConvexFn phi, PiecewiseLinearConvexFn psi);

  const PiecewiseLinearConvexFn& phi() const { return phi_; }
  const PiecewiseLinearConvexFn& psi() const { return psi_; }

 private:
  PiecewiseLinearConvexFn phi_;
  PiecewiseLinearConvexFn psi_;
};

/// Truncation depth of the breakpoint construction.
struct PaperParams {
  static constexpr int kMaxDepth = 100;
  int n_max;

  explicit PaperParams(int n);
};

/// sum_{i=1..n} i^i. Throws std::out_of_range outside 0 <= n <= 100.
double xi(int n);
/// sum_{i=1..n} c_i i^i with c_i = 1 for odd i and 1/2 for even i.
double zeta(int n);

/// Step functions phi, psi: -1 on (-inf, 0), then -1/n^n on
/// [xi_{n-1}, xi_n) (resp. -(3+(-1)^n)/2 / n^n on [zeta_{n-1}, zeta_n)) for
/// n = 1..n_max, with the last value continued past xi_{n_max}.
StepFunction paper_phi_step(const PaperParams& p);
StepFunction paper_psi_step(const PaperParams& p);

MaxSeparable2D build_paper_operator(const PaperParams& p);

double level(const MaxSeparable2D& op, Point2 point);

enum class ProxCase {
  XOnly,      ///< Phi strictly dominates at the x-only candidate.
  YOnly,      ///< Psi strictly dominates at the y-only candidate.
  MaxActive,  ///< Phi(x) = Psi(y) at the minimizer.
};

struct ProxMaxResult {
  Point2 point;
  /// point - prox(point): the subgradient of f the prox selects.
  Point2 shift;
  ProxCase active;
  /// Weight on Phi in the subgradient; 1 for XOnly, 0 for YOnly.
  double theta;
};

/// Exact prox of f at `point` via case analysis and bisection on the
/// subgradient weight theta. Coordinates are accurate to `tol` or better.
/// Throws std::invalid_argument when tol <= 0.
ProxMaxResult prox_max_detail(const MaxSeparable2D& op, Point2 point, double tol);
Point2 prox_max(const MaxSeparable2D& op, Point2 point, double tol);

/// Same minimizer, first trying the closed-form affine step valid when the
/// input and its image lie strictly inside one pair of linear segments. The
/// affine candidate is accepted only after its optimality conditions check
/// out; otherwise falls back to prox_max_detail.
ProxMaxResult prox_max_fast(const MaxSeparable2D& op, Point2 point, double tol);

/// (invert(Phi, t), invert(Psi, t)).
Point2 gamma_point(const MaxSeparable2D& op, double t);

/// (xi_n, zeta_n) / |(xi_n, zeta_n)|, for 1 <= n <= 100.
Point2 analytic_direction(int n);

/// Phi, Psi in the piecewise schema plus {"n_max": n}.
nlohmann::json to_json(const MaxSeparable2D& op, int n_max);
MaxSeparable2D max_separable_from_json(const nlohmann::json& j);

}  // namespace cosmic
