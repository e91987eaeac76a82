#pragma once

#include "tgvr/image_grid.hpp"
#include "tgvr/tensor_field.hpp"

namespace tgvr {

/// Proximal step for the positivity + photometry constraints: clamp at zero,
/// then shift uniformly so the total matches sum(z). The clamp is applied
/// before the shift, so the output can carry small negative values; the
/// output sum equals sum(z) up to accumulation round-off.
ImageGrid prox_positivity_photometry(const ImageGrid& x, const ImageGrid& z);

/// Componentwise proximal operator of the conjugate Poisson fidelity with
/// weight lambda and step sigma:
///   (x + lambda - sqrt((x - lambda)^2 + 4*sigma*lambda*z)) / 2   for z != 0,
///   lambda                                                       for z == 0.
/// The z == 0 branch tests exact equality; counts arrive as exact integers.
ImageGrid prox_poisson_conjugate(const ImageGrid& x, double sigma, double lambda,
                                 const ImageGrid& z);

/// Scalar form of the above, for one pixel.
double prox_poisson_conjugate_scalar(double x, double sigma, double lambda, double z);

/// Per-pixel radial projection onto the L_{2,inf} ball of the given radius:
/// v -> v * radius / max(radius, |v|_2). Pixels already inside are copied
/// bitwise, so the projection is exactly idempotent.
TensorField project_l2inf_ball(const TensorField& x, double radius);

} // namespace tgvr
