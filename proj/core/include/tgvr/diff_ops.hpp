#pragma once

#include "tgvr/image_grid.hpp"
#include "tgvr/tensor_field.hpp"

namespace tgvr {

// Discrete first-order operators on the pixel grid, spacing 1 in both axes.
// Forward differences with Neumann boundary (zero difference at the trailing
// edge of each axis); divergence is the exact negative adjoint under this
// convention, which the primal-dual solver requires.

/// Forward-difference gradient of an image: arity-2 field (d1 x, d2 x).
TensorField gradient(const ImageGrid& x);

/// Gradient of an arity-k field (k in {1,2}), block layout (d1 x, d2 x):
/// arity 2k output.
TensorField gradient(const TensorField& x);

/// Negative adjoint of gradient. Arity 2 -> arity 1, arity 4 -> arity 2
/// (blocks along e1, e2).
TensorField divergence(const TensorField& y);

/// divergence of an arity-2 field returned directly as an image.
ImageGrid divergence_image(const TensorField& y);

/// Symmetrized derivative of a vector field: per-pixel symmetric 2x2 tensor
/// (d1 w1, cross, cross, d2 w2) with cross = (d2 w1 + d1 w2)/2.
/// Components 2 and 3 are equal by construction.
TensorField sym_derivative(const TensorField& w);

/// Adjoint of sym_derivative: satisfies <sym_derivative(w), r> = <w, adjoint(r)>
/// for arbitrary arity-4 r (the cross components are averaged).
TensorField sym_derivative_adjoint(const TensorField& r);

} // namespace tgvr
