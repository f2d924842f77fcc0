#include "cosmic/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cosmic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class BoxSampler {
 public:
  BoxSampler(SamplingBox box, std::uint64_t seed) : box_(box), rng_(seed) {
    if (!(std::isfinite(box.lo) && std::isfinite(box.hi) && box.lo < box.hi)) {
      throw std::invalid_argument("degenerate sampling box");
    }
  }

  // Bit-level conversion keeps the stream identical across standard libraries.
  Vec draw(std::size_t dim) {
    Vec x(dim);
    for (double& v : x) {
      const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
      v = box_.lo + (box_.hi - box_.lo) * u;
    }
    return x;
  }

 private:
  SamplingBox box_;
  std::mt19937_64 rng_;
};

CheckReport start_report(std::string name, double tol, std::uint64_t seed) {
  CheckReport r;
  r.name = std::move(name);
  r.tolerance = tol;
  r.seed = seed;
  r.worst_violation = -std::numeric_limits<double>::infinity();
  return r;
}

void finish(CheckReport& r) { r.pass = r.worst_violation <= r.tolerance; }

void record(CheckReport& r, double violation, const Vec& witness) {
  if (violation > r.worst_violation) {
    r.worst_violation = violation;
    r.witness = witness;
  }
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Pairwise checks use D = I - T: with du = u - w and dd = D(u) - D(w),
// Tu - Tw = du - dd, so both inequalities reduce to expressions in du and dd
// that avoid subtracting nearly equal large numbers.
template <class Violation>
CheckReport pairwise_check(std::string name, const OperatorHandle& op,
                           std::size_t n_pairs, SamplingBox box, double tol,
                           std::uint64_t seed, Violation&& violation) {
  if (n_pairs < 1) throw std::invalid_argument("need at least one sample pair");
  BoxSampler sampler(box, seed);
  CheckReport r = start_report(std::move(name), tol, seed);
  r.samples = n_pairs;
  Vec du(op.dimension), dd(op.dimension);
  for (std::size_t s = 0; s < n_pairs; ++s) {
    const Vec u = sampler.draw(op.dimension);
    const Vec w = sampler.draw(op.dimension);
    const Vec Du = op.displacement_at(u);
    const Vec Dw = op.displacement_at(w);
    for (std::size_t i = 0; i < op.dimension; ++i) {
      du[i] = u[i] - w[i];
      dd[i] = Du[i] - Dw[i];
    }
    record(r, violation(du, dd), concat(u, w));
  }
  finish(r);
  return r;
}

void require_unit(const Vec& q, std::size_t dim) {
  if (q.size() != dim) throw std::invalid_argument("direction has the wrong dimension");
  if (std::abs(norm(q) - 1.0) > 1e-9) {
    throw std::invalid_argument("direction must have unit norm");
  }
}

}  // namespace

CheckReport check_nonexpansive(const OperatorHandle& op, std::size_t n_pairs,
                               SamplingBox box, double tol, std::uint64_t seed) {
  return pairwise_check("nonexpansive", op, n_pairs, box, tol, seed,
                        [](const Vec& du, const Vec& dd) {
                          // |du - dd| - |du| = (|dd|^2 - 2<du,dd>) / (|du - dd| + |du|)
                          Vec dt(du.size());
                          for (std::size_t i = 0; i < du.size(); ++i) dt[i] = du[i] - dd[i];
                          const double denom = norm(dt) + norm(du);
                          if (denom == 0.0) return 0.0;
                          return (dot(dd, dd) - 2.0 * dot(du, dd)) / denom;
                        });
}

CheckReport check_firmly_nonexpansive(const OperatorHandle& op, std::size_t n_pairs,
                                      SamplingBox box, double tol, std::uint64_t seed) {
  return pairwise_check("firmly_nonexpansive", op, n_pairs, box, tol, seed,
                        [](const Vec& du, const Vec& dd) {
                          // |du - dd|^2 - <du - dd, du> = |dd|^2 - <du, dd>
                          return dot(dd, dd) - dot(du, dd);
                        });
}

CheckReport check_displacement_bound(const OperatorHandle& op, double bound,
                                     std::size_t n_samples, SamplingBox box, double tol,
                                     std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  BoxSampler sampler(box, seed);
  CheckReport r = start_report("displacement_bound", tol, seed);
  r.samples = n_samples;
  r.metrics["bound"] = bound;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec x = sampler.draw(op.dimension);
    record(r, norm(op.displacement_at(x)) - bound, x);
  }
  finish(r);
  return r;
}

CheckReport check_separating_hyperplane(const OperatorHandle& op, const Vec& q,
                                        std::size_t n_samples, SamplingBox box,
                                        double tol, std::uint64_t seed) {
  require_unit(q, op.dimension);
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  BoxSampler sampler(box, seed);
  CheckReport r = start_report("separating_hyperplane", tol, seed);
  r.samples = n_samples;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec x = sampler.draw(op.dimension);
    // -<T(x) - x, q> = <D(x), q>
    record(r, dot(op.displacement_at(x), q), x);
  }
  finish(r);
  return r;
}

CheckReport check_monotone_inner(const Trajectory& traj, const Vec& q, double tol) {
  require_unit(q, traj.start.size());
  std::vector<const Vec*> points{&traj.start};
  std::vector<std::size_t> ks{0};
  for (const auto& c : traj.checkpoints) {
    if (c.k == 0) continue;
    points.push_back(&c.x);
    ks.push_back(c.k);
  }
  if (traj.steps > ks.back()) {
    points.push_back(&traj.tail_last);
    ks.push_back(traj.steps);
  }
  if (points.size() < 2) {
    throw std::invalid_argument("monotonicity needs at least two recorded iterates");
  }

  CheckReport r = start_report("monotone_inner", tol, 0);
  r.samples = points.size() - 1;
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    record(r, dot(*points[j], q) - dot(*points[j + 1], q),
           {static_cast<double>(ks[j]), static_cast<double>(ks[j + 1])});
  }
  for (const auto& c : traj.checkpoints) {
    if (c.step.empty()) continue;
    ++r.samples;
    record(r, -dot(c.step, q), {static_cast<double>(c.k - 1), static_cast<double>(c.k)});
  }
  if (traj.steps > 0) {
    Vec step(traj.tail_last.size());
    for (std::size_t i = 0; i < step.size(); ++i) {
      step[i] = traj.tail_last[i] - traj.tail_prev[i];
    }
    ++r.samples;
    record(r, -dot(step, q),
           {static_cast<double>(traj.steps - 1), static_cast<double>(traj.steps)});
  }
  r.metrics["growth"] = dot(*points.back(), q) - dot(*points.front(), q);
  finish(r);
  return r;
}

CheckReport check_pairwise_nonneg(const std::vector<Vec>& centers, double tol) {
  if (centers.empty()) throw std::invalid_argument("need at least one center");
  CheckReport r = start_report("pairwise_nonneg", tol, 0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i; j < centers.size(); ++j) {
      ++r.samples;
      record(r, -dot(centers[i], centers[j]),
             {static_cast<double>(i), static_cast<double>(j)});
    }
  }
  r.metrics["min_inner_product"] = -r.worst_violation;
  finish(r);
  return r;
}

CheckReport check_cone_inclusion_2d(const Vec& q, const OperatorHandle& op,
                                    std::size_t n_samples, SamplingBox box, double tol,
                                    std::uint64_t seed) {
  if (op.dimension != 2) throw std::invalid_argument("cone inclusion check is planar only");
  require_unit(q, 2);
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  BoxSampler sampler(box, seed);
  std::vector<double> angles;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec d = op.displacement_at(sampler.draw(2));
    // T(x) - x = -D(x)
    if (d[0] == 0.0 && d[1] == 0.0) continue;
    angles.push_back(std::atan2(-d[1], -d[0]));
  }
  if (angles.empty()) throw std::domain_error("empty angular span: T(x) = x at every sample");
  std::sort(angles.begin(), angles.end());

  // The smallest arc holding every angle is the complement of the widest gap.
  double widest = angles.front() + kTwoPi - angles.back();
  double arc_start = angles.front();
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double gap = angles[i] - angles[i - 1];
    if (gap > widest) {
      widest = gap;
      arc_start = angles[i];
    }
  }
  const double arc_width = kTwoPi - widest;

  CheckReport r = start_report("cone_inclusion_2d", tol, seed);
  r.samples = n_samples;
  r.witness = q;
  r.metrics["arc_start"] = arc_start;
  r.metrics["arc_width"] = arc_width;
  if (widest < std::numbers::pi) {
    // Directions positively span the plane; the closed cone is everything.
    r.worst_violation = 0.0;
  } else {
    double offset = std::fmod(std::atan2(q[1], q[0]) - arc_start, kTwoPi);
    if (offset < 0.0) offset += kTwoPi;
    r.worst_violation =
        offset <= arc_width ? 0.0 : std::min(offset - arc_width, kTwoPi - offset);
  }
  finish(r);
  return r;
}

nlohmann::json to_json(const CheckReport& report) {
  return {{"name", report.name},
          {"samples", report.samples},
          {"worst_violation", report.worst_violation},
          {"tolerance", report.tolerance},
          {"pass", report.pass},
          {"witness", report.witness},
          {"seed", report.seed},
          {"metrics", report.metrics}};
}

}  // namespace cosmic
