#ifndef KWFLOW_SPECTRAL_HPP
#define KWFLOW_SPECTRAL_HPP

#include <utility>

#include "kwflow/field.hpp"

namespace kwflow::spectral {

/** Flat Laplacian via the Fourier multiplier -4*pi^2*|k|^2. */
ScalarField laplacian(const ScalarField& f);

/** Flat spectral first derivatives (d/dx1, d/dx2); Nyquist mode dropped. */
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);

/**
 * Solve -Laplacian v = f on the torus with zero flat mean.
 * The k = 0 mode of f is discarded; callers enforce compatibility.
 */
ScalarField poisson_inverse(const ScalarField& f);

/** Solve (alpha - Laplacian) v = f, alpha > 0. */
ScalarField helmholtz_inverse(double alpha, const ScalarField& f);

}  // namespace kwflow::spectral

#endif
