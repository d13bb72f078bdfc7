#include "kwflow/surface.hpp"

#include <cmath>

#include "kwflow/spectral.hpp"

namespace kwflow {

Surface make_surface(Grid grid, const ScalarField& phi_raw) {
  if (!(phi_raw.grid() == grid)) throw GridMismatchError("phi sampled on a different grid");
  require_finite(phi_raw, "phi");
  double cell = grid.dx * grid.dx;
  double area = 0;
  for (std::size_t k = 0; k < phi_raw.size(); ++k) area += std::exp(phi_raw[k]) * cell;
  double shift = -std::log(area);
  Surface s;
  s.grid = grid;
  s.phi = phi_raw;
  s.phi += shift;
  s.area_element = ScalarField(grid);
  for (std::size_t k = 0; k < s.phi.size(); ++k) s.area_element[k] = std::exp(s.phi[k]);
  return s;
}

Surface flat_surface(Grid grid) { return make_surface(grid, ScalarField(grid, 0.0)); }

double integrate(const Surface& s, const ScalarField& f) {
  if (!(f.grid() == s.grid)) throw GridMismatchError("integrand on a different grid");
  double cell = s.grid.dx * s.grid.dx;
  double acc = 0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += f[k] * s.area_element[k];
  return acc * cell;
}

ScalarField laplace_beltrami(const Surface& s, const ScalarField& f) {
  if (!(f.grid() == s.grid)) throw GridMismatchError("field on a different grid");
  ScalarField lap = spectral::laplacian(f);
  for (std::size_t k = 0; k < lap.size(); ++k) lap[k] /= s.area_element[k];
  return lap;
}

ScalarField grad_energy_density(const Surface& s, const ScalarField& f) {
  if (!(f.grid() == s.grid)) throw GridMismatchError("field on a different grid");
  auto [d1, d2] = spectral::gradient(f);
  ScalarField out(s.grid);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = (d1[k] * d1[k] + d2[k] * d2[k]) / s.area_element[k];
  return out;
}

ScalarField gauss_curvature(const Surface& s) {
  ScalarField lap = spectral::laplacian(s.phi);
  ScalarField out(s.grid);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -0.5 * lap[k] / s.area_element[k];
  return out;
}

ScalarField poisson_solve(const Surface& s, const ScalarField& f) {
  if (!(f.grid() == s.grid)) throw GridMismatchError("rhs on a different grid");
  double mean = f.sum() / static_cast<double>(f.size());
  if (std::abs(mean) > 1e-10)
    throw SolvabilityError("periodic Poisson problem needs a mean-zero right-hand side");
  return spectral::poisson_inverse(f);
}

SobolevNorms sobolev_norms(const Surface& s, const ScalarField& f) {
  double l2sq = integrate(s, hadamard(f, f));
  double gradsq = integrate(s, grad_energy_density(s, f));
  ScalarField lap = laplace_beltrami(s, f);
  double lapsq = integrate(s, hadamard(lap, lap));
  SobolevNorms n;
  n.l2 = std::sqrt(l2sq);
  n.h1 = std::sqrt(l2sq + gradsq);
  n.h2 = std::sqrt(l2sq + gradsq + lapsq);
  return n;
}

ScalarField gauge_mean_zero(const Surface& s, const ScalarField& f) {
  ScalarField out = f;
  out += -integrate(s, f);
  return out;
}

}  // namespace kwflow
