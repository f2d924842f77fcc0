#include "cosmic/prox2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosmic {

namespace {

constexpr int kMaxBisections = 50;

void check_depth(int n) {
  if (n < 0 || n > PaperParams::kMaxDepth) {
    throw std::out_of_range("breakpoint index " + std::to_string(n) +
                            " outside [0, 100]");
  }
}

double self_power(int i) { return std::pow(static_cast<double>(i), i); }

// 2 / (3 + (-1)^i)
double zeta_weight(int i) { return i % 2 == 0 ? 0.5 : 1.0; }

// One coordinate of the theta-parametrized prox: z(theta) = base + rate*theta
// and F(z(theta)) = level0 + level_rate*theta while the piece is fixed.
struct AffineBranch {
  double base, rate, level0, level_rate;
};

AffineBranch branch_of(const PiecewiseLinearConvexFn& F, const ProxPiece& piece,
                       double xprime, bool weight_is_theta) {
  if (piece.kind == ProxPiece::Kind::Knot) {
    return {F.knots()[piece.index], 0.0, F.knot_values()[piece.index], 0.0};
  }
  const double s = F.slopes()[piece.index];
  // weight theta:     z = xprime - theta*s
  // weight 1 - theta: z = (xprime - s) + theta*s
  const double base = weight_is_theta ? xprime : xprime - s;
  const double rate = weight_is_theta ? -s : s;
  return {base, rate, F.eval_on_segment(piece.index, base), s * rate};
}

ProxMaxResult max_active(const MaxSeparable2D& op, Point2 p, double tol) {
  const auto& phi = op.phi();
  const auto& psi = op.psi();
  auto at = [&](double theta) {
    return std::pair{prox_1d_detail(phi, theta, p[0]),
                     prox_1d_detail(psi, 1.0 - theta, p[1])};
  };

  double lo = 0.0, hi = 1.0;
  auto [xlo, ylo] = at(lo);
  auto [xhi, yhi] = at(hi);
  double theta = 0.5;
  bool solved = false;
  for (int it = 0; it < kMaxBisections; ++it) {
    if (xlo.piece == xhi.piece && ylo.piece == yhi.piece) {
      // Both coordinates are affine in theta on [lo, hi]; g is affine too.
      const auto bx = branch_of(phi, xlo.piece, p[0], true);
      const auto by = branch_of(psi, ylo.piece, p[1], false);
      const double denom = bx.level_rate - by.level_rate;
      theta = denom != 0.0 ? (by.level0 - bx.level0) / denom : 0.5 * (lo + hi);
      theta = std::clamp(theta, lo, hi);
      solved = true;
      break;
    }
    if (hi - lo <= tol) break;
    const double mid = 0.5 * (lo + hi);
    auto [xm, ym] = at(mid);
    const double g = eval(phi, xm.z) - eval(psi, ym.z);
    if (g > 0.0) {
      lo = mid;
      xlo = xm;
      ylo = ym;
    } else {
      hi = mid;
      xhi = xm;
      yhi = ym;
    }
  }
  if (!solved) theta = 0.5 * (lo + hi);

  const auto [x, y] = at(theta);
  return {{x.z, y.z}, {x.shift, y.shift}, ProxCase::MaxActive, theta};
}

bool strictly_inside(const PiecewiseLinearConvexFn& F, std::size_t j, double z) {
  const auto& k = F.knots();
  return (j == 0 || k[j - 1] < z) && (j == k.size() || z < k[j]);
}

}  // namespace

MaxSeparable2D::MaxSeparable2D(PiecewiseLinearConvexFn phi, PiecewiseLinearConvexFn psi)
    : phi_(std::move(phi)), psi_(std::move(psi)) {
  if (eval(phi_, 0.0) != 0.0 || eval(psi_, 0.0) != 0.0) {
    throw std::invalid_argument("Phi and Psi must both vanish at 0");
  }
}

PaperParams::PaperParams(int n) : n_max(n) {
  if (n < 2 || n > kMaxDepth) {
    throw std::out_of_range("n_max must lie in [2, 100], got " + std::to_string(n));
  }
}

double xi(int n) {
  check_depth(n);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) sum += self_power(i);
  return sum;
}

double zeta(int n) {
  check_depth(n);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) sum += zeta_weight(i) * self_power(i);
  return sum;
}

StepFunction paper_phi_step(const PaperParams& p) {
  std::vector<double> breakpoints{0.0};
  std::vector<double> values{-1.0};
  for (int n = 1; n <= p.n_max; ++n) {
    breakpoints.push_back(xi(n));
    values.push_back(-1.0 / self_power(n));
  }
  values.push_back(values.back());
  return {std::move(breakpoints), std::move(values)};
}

StepFunction paper_psi_step(const PaperParams& p) {
  std::vector<double> breakpoints{0.0};
  std::vector<double> values{-1.0};
  for (int n = 1; n <= p.n_max; ++n) {
    breakpoints.push_back(zeta(n));
    values.push_back(-1.0 / (zeta_weight(n) * self_power(n)));
  }
  values.push_back(values.back());
  return {std::move(breakpoints), std::move(values)};
}

MaxSeparable2D build_paper_operator(const PaperParams& p) {
  return {antiderivative(paper_phi_step(p)), antiderivative(paper_psi_step(p))};
}

double level(const MaxSeparable2D& op, Point2 point) {
  return std::max(eval(op.phi(), point[0]), eval(op.psi(), point[1]));
}

ProxMaxResult prox_max_detail(const MaxSeparable2D& op, Point2 point, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("prox tolerance must be positive");
  const auto& phi = op.phi();
  const auto& psi = op.psi();

  const auto xa = prox_1d_detail(phi, 1.0, point[0]);
  if (eval(phi, xa.z) > eval(psi, point[1])) {
    return {{xa.z, point[1]}, {xa.shift, 0.0}, ProxCase::XOnly, 1.0};
  }
  const auto yb = prox_1d_detail(psi, 1.0, point[1]);
  if (eval(psi, yb.z) > eval(phi, point[0])) {
    return {{point[0], yb.z}, {0.0, yb.shift}, ProxCase::YOnly, 0.0};
  }
  return max_active(op, point, tol);
}

Point2 prox_max(const MaxSeparable2D& op, Point2 point, double tol) {
  return prox_max_detail(op, point, tol).point;
}

ProxMaxResult prox_max_fast(const MaxSeparable2D& op, Point2 point, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("prox tolerance must be positive");
  const auto& phi = op.phi();
  const auto& psi = op.psi();
  const std::size_t jx = phi.segment_of(point[0]);
  const std::size_t jy = psi.segment_of(point[1]);
  const double a = phi.slopes()[jx];
  const double b = psi.slopes()[jy];

  // Phi(x' - theta a) = Psi(y' - (1 - theta) b) on these segments.
  const double theta =
      (phi.eval_on_segment(jx, point[0]) - psi.eval_on_segment(jy, point[1] - b)) /
      (a * a + b * b);
  if (theta > 0.0 && theta < 1.0) {
    const double sx = theta * a;
    const double sy = (1.0 - theta) * b;
    const Point2 next{point[0] - sx, point[1] - sy};
    if (strictly_inside(phi, jx, point[0]) && strictly_inside(psi, jy, point[1]) &&
        strictly_inside(phi, jx, next[0]) && strictly_inside(psi, jy, next[1])) {
      return {next, {sx, sy}, ProxCase::MaxActive, theta};
    }
  }
  return prox_max_detail(op, point, tol);
}

Point2 gamma_point(const MaxSeparable2D& op, double t) {
  return {invert(op.phi(), t), invert(op.psi(), t)};
}

Point2 analytic_direction(int n) {
  if (n < 1) throw std::out_of_range("analytic direction needs n >= 1");
  const double x = xi(n);
  const double y = zeta(n);
  const double r = std::hypot(x, y);
  return {x / r, y / r};
}

nlohmann::json to_json(const MaxSeparable2D& op, int n_max) {
  return {{"n_max", n_max}, {"phi", to_json(op.phi())}, {"psi", to_json(op.psi())}};
}

MaxSeparable2D max_separable_from_json(const nlohmann::json& j) {
  return {piecewise_linear_from_json(j.at("phi")),
          piecewise_linear_from_json(j.at("psi"))};
}

}  // namespace cosmic
