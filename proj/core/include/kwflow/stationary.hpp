#ifndef KWFLOW_STATIONARY_HPP
#define KWFLOW_STATIONARY_HPP

#include <span>
#include <utility>
#include <vector>

#include "kwflow/green.hpp"

namespace kwflow {

struct NewtonResult {
  ScalarField u;  ///< gauged so integral u dmu_g = 0
  double residual = 0;
  int iterations = 0;
  bool converged = false;
  bool linear_solver_breakdown = false;
};

/**
 * Newton iteration for M(u) = 0 with the Jacobi operator as linearization.
 * Constants (the kernel) are projected out of both sides; inner solves use
 * CG in the L^2(dmu_g) inner product with a constant-coefficient spectral
 * preconditioner. Steps are halved while the residual fails to decrease.
 */
NewtonResult newton_solve(const Surface& s, const Weight& w, double rho,
                          const ScalarField& u_init, double tol = 1e-10, int max_iter = 30);

struct SeedResult {
  ScalarField u0;
  double j0 = 0;
  double c0 = 0;
  double margin = 0;  ///< j0 - c0 (negative on success)
  double eps = 0;     ///< selected bubble scale
  std::vector<std::pair<double, double>> scan;  ///< (eps, J(u_eps))
  bool ok = false;
};

/**
 * Glued-bubble initial data below the blow-up energy barrier: planar bubble
 * core matched to the Green tail across a C^0 blend on [delta, 2 delta],
 * scanned over eps with the minimizer returned.
 */
SeedResult construct_subcritical_data(const Surface& s, const Weight& w, const GreenData& gd,
                                      double c0, std::span<const double> eps_range,
                                      double delta = 0.1);

/** Log-spaced default scan range for the bubble scale. */
std::vector<double> default_eps_range(double lo = 1e-3, double hi = 1e-1, int count = 17);

/**
 * Default range clamped below at 4 dx. Bubbles narrower than a few cells are
 * not representable on the grid and their discrete J is meaningless, so seeds
 * meant to be flowed should scan resolvable scales only.
 */
std::vector<double> resolvable_eps_range(const Grid& g, double hi = 1e-1, int count = 16);

}  // namespace kwflow

#endif
