#pragma once

// Sampling-based checks of operator properties and of the inequalities that
// cosmic accumulation directions q must satisfy:
//   <T(x) - x, q> >= 0 for every x,
//   <x^k, q> nondecreasing along the iteration,
//   <q1, q2> >= 0 for any two accumulation directions,
//   q in the closed cone generated by ran(T - I).
//
// Every check reports a signed worst-case violation; pass means
// worst_violation <= tolerance. Sampling is deterministic in the seed.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosmic/engine.hpp"

namespace cosmic {

/// Uniform sampling box [lo, hi]^d.
struct SamplingBox {
  double lo = -1e6;
  double hi = 1e6;
};

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Vec witness;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
};

constexpr std::uint64_t kDefaultSeed = 20170101;

/// max over pairs of |Tu - Tw| - |u - w|.
CheckReport check_nonexpansive(const OperatorHandle& op, std::size_t n_pairs,
                               SamplingBox box, double tol,
                               std::uint64_t seed = kDefaultSeed);

/// max over pairs of |Tu - Tw|^2 - <Tu - Tw, u - w>.
CheckReport check_firmly_nonexpansive(const OperatorHandle& op, std::size_t n_pairs,
                                      SamplingBox box, double tol,
                                      std::uint64_t seed = kDefaultSeed);

/// max over samples of |x - T(x)| - bound.
CheckReport check_displacement_bound(const OperatorHandle& op, double bound,
                                     std::size_t n_samples, SamplingBox box, double tol,
                                     std::uint64_t seed = kDefaultSeed);

/// max over samples of -<T(x) - x, q>. q must have unit norm (1e-9).
CheckReport check_separating_hyperplane(const OperatorHandle& op, const Vec& q,
                                        std::size_t n_samples, SamplingBox box,
                                        double tol, std::uint64_t seed = kDefaultSeed);

/// max over consecutive recorded iterates of <x^a, q> - <x^b, q>, plus the
/// per-step decrease on every stored step. metrics["growth"] is the last
/// minus the first inner product.
CheckReport check_monotone_inner(const Trajectory& traj, const Vec& q, double tol);

/// max over i <= j of -<q_i, q_j> (the diagonal contributes -1).
CheckReport check_pairwise_nonneg(const std::vector<Vec>& centers, double tol);

/// Angular distance from q to the smallest arc containing the sampled
/// directions of T(x) - x; 0 if q lies inside. Planar operators only.
CheckReport check_cone_inclusion_2d(const Vec& q, const OperatorHandle& op,
                                    std::size_t n_samples, SamplingBox box, double tol,
                                    std::uint64_t seed = kDefaultSeed);

nlohmann::json to_json(const CheckReport& report);

}  // namespace cosmic
