#ifndef KWFLOW_BUILTINS_HPP
#define KWFLOW_BUILTINS_HPP

#include <cstdint>
#include <string>

#include "kwflow/functionals.hpp"

namespace kwflow {

/**
 * Built-in conformal factors: "zero", "cos_x1" (amplitude * cos(2 pi x1)),
 * "cos_both" (amplitude * (cos(2 pi x1) + cos(2 pi x2))).
 */
ScalarField builtin_phi(Grid g, const std::string& name, double amplitude);

/**
 * Built-in prescribed functions:
 *   const             h = 1
 *   one_plus_half_cos h = 1 + 0.5 cos(2 pi x1)
 *   near_vanishing    h = 1 + 0.999 cos(2 pi x1)
 *   vanishing_patch   smooth bump in x1 supported on (0, 1/2), zero elsewhere
 */
Weight builtin_weight(Grid g, const std::string& name);

/**
 * Deterministic band-limited random field: Fourier modes with 0 < |k|_inf <=
 * kmax, Gaussian coefficients damped by exp(-|k|^2/2), rescaled to the given
 * sup amplitude.
 */
ScalarField random_smooth_field(Grid g, std::uint64_t seed, int kmax = 4, double amplitude = 1.0);

}  // namespace kwflow

#endif
