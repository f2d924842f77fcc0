#pragma once

// OperatorHandle factories for the built-in operators.

#include <cstddef>

#include "cosmic/engine.hpp"
#include "cosmic/prox2d.hpp"
#include "cosmic/seqspace.hpp"

namespace cosmic {

/// T(x) = x - v. Displacement is v exactly.
OperatorHandle make_translation(Vec v);

/// Rotation of the plane by `angle` radians. An isometry, so non-expansive,
/// but not firmly non-expansive for any angle other than 0.
OperatorHandle make_rotation_2d(double angle);

OperatorHandle make_identity(std::size_t dimension);

/// Prox of max{Phi(x), Psi(y)}, with level max{Phi(x), Psi(y)} and level
/// floor -n_max + 1 below which the truncated construction is not trusted.
OperatorHandle make_paper_2d(const PaperParams& params, double prox_tol = 1e-12,
                             bool fast_path = true);

OperatorHandle make_max_separable_2d(MaxSeparable2D op, double prox_tol = 1e-12,
                                     bool fast_path = true);

OperatorHandle make_sequence_space(std::size_t n_coords);

}  // namespace cosmic
