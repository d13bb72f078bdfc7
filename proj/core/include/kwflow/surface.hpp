#ifndef KWFLOW_SURFACE_HPP
#define KWFLOW_SURFACE_HPP

#include "kwflow/field.hpp"

namespace kwflow {

/**
 * Conformally flat torus g = e^phi |dx|^2, normalized to unit area.
 * area_element caches e^phi.
 */
struct Surface {
  Grid grid;
  ScalarField phi;
  ScalarField area_element;
};

/** Shift phi_raw by a constant so the total area is exactly one. */
Surface make_surface(Grid grid, const ScalarField& phi_raw);

/** Flat unit torus (phi = 0). */
Surface flat_surface(Grid grid);

/** Riemann sum of f against dmu_g = e^phi dx^2; exact for band-limited integrands. */
double integrate(const Surface& s, const ScalarField& f);

/** Laplace-Beltrami operator: e^{-phi} * flat spectral Laplacian. */
ScalarField laplace_beltrami(const Surface& s, const ScalarField& f);

/** Pointwise |grad_g f|_g^2 = e^{-phi} |grad_flat f|^2. */
ScalarField grad_energy_density(const Surface& s, const ScalarField& f);

/** Gauss curvature K = -1/2 e^{-phi} Laplacian(phi). */
ScalarField gauss_curvature(const Surface& s);

/**
 * Solve -Laplacian_flat v = f with zero flat mean.
 * Throws SolvabilityError unless |mean f| <= 1e-10.
 */
ScalarField poisson_solve(const Surface& s, const ScalarField& f);

struct SobolevNorms {
  double l2;
  double h1;
  double h2;
};

/** L2, H1, H2 norms with respect to dmu_g; H2 uses the Laplace-Beltrami term. */
SobolevNorms sobolev_norms(const Surface& s, const ScalarField& f);

/** Mean-zero gauge with respect to dmu_g: f - integral(f) dmu_g. */
ScalarField gauge_mean_zero(const Surface& s, const ScalarField& f);

}  // namespace kwflow

#endif
