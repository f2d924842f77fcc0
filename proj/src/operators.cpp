#include "cosmic/operators.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace cosmic {

OperatorHandle make_translation(Vec v) {
  if (v.empty()) throw std::invalid_argument("translation vector is empty");
  auto shared = std::make_shared<const Vec>(std::move(v));
  OperatorHandle h;
  h.dimension = shared->size();
  h.label = "translation";
  h.apply = [shared](std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - (*shared)[i];
  };
  h.displacement = [shared](std::span<const double>, std::span<double> out) {
    std::copy(shared->begin(), shared->end(), out.begin());
  };
  return h;
}

OperatorHandle make_rotation_2d(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  OperatorHandle h;
  h.dimension = 2;
  h.label = "rotation";
  h.apply = [c, s](std::span<const double> x, std::span<double> out) {
    const double x0 = x[0], x1 = x[1];
    out[0] = c * x0 - s * x1;
    out[1] = s * x0 + c * x1;
  };
  return h;
}

OperatorHandle make_identity(std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("identity needs dimension >= 1");
  OperatorHandle h;
  h.dimension = dimension;
  h.label = "identity";
  h.apply = [](std::span<const double> x, std::span<double> out) {
    std::copy(x.begin(), x.end(), out.begin());
  };
  h.displacement = [](std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
  return h;
}

OperatorHandle make_max_separable_2d(MaxSeparable2D op, double prox_tol, bool fast_path) {
  if (!(prox_tol > 0.0)) throw std::invalid_argument("prox tolerance must be positive");
  auto shared = std::make_shared<const MaxSeparable2D>(std::move(op));
  auto step = [shared, prox_tol, fast_path](std::span<const double> x) {
    const Point2 p{x[0], x[1]};
    return fast_path ? prox_max_fast(*shared, p, prox_tol)
                     : prox_max_detail(*shared, p, prox_tol);
  };
  OperatorHandle h;
  h.dimension = 2;
  h.label = "max_separable_2d";
  h.apply = [step](std::span<const double> x, std::span<double> out) {
    const auto r = step(x);
    out[0] = r.point[0];
    out[1] = r.point[1];
  };
  h.displacement = [step](std::span<const double> x, std::span<double> out) {
    const auto r = step(x);
    out[0] = r.shift[0];
    out[1] = r.shift[1];
  };
  h.level = [shared](std::span<const double> x) { return level(*shared, {x[0], x[1]}); };
  return h;
}

OperatorHandle make_paper_2d(const PaperParams& params, double prox_tol, bool fast_path) {
  OperatorHandle h = make_max_separable_2d(build_paper_operator(params), prox_tol, fast_path);
  h.label = "paper2d";
  h.level_floor = -static_cast<double>(params.n_max) + 1.0;
  return h;
}

OperatorHandle make_sequence_space(std::size_t n_coords) {
  auto shared = std::make_shared<const TruncatedGradientOperator>(n_coords);
  OperatorHandle h;
  h.dimension = n_coords;
  h.label = "seqspace";
  h.apply = [shared](std::span<const double> x, std::span<double> out) {
    shared->apply(x, out);
  };
  h.displacement = [shared](std::span<const double> x, std::span<double> out) {
    shared->displacement(x, out);
  };
  return h;
}

}  // namespace cosmic
