#include "kwflow/functionals.hpp"

#include <cmath>
#include <cstdio>

namespace kwflow {

Weight Weight::make(const ScalarField& h) {
  require_finite(h, "h");
  Weight w;
  w.h = h;
  std::size_t zeros = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k] < 0) throw InvalidFieldError("prescribed function h must be non-negative");
    if (h[k] == 0) ++zeros;
  }
  w.max_h = h.max();
  if (!(w.max_h > 0)) throw DegenerateWeightError("prescribed function h vanishes identically");
  w.zero_fraction = static_cast<double>(zeros) / static_cast<double>(h.size());
  return w;
}

double mass(const Surface& s, const ScalarField& u) {
  require_finite(u, "u");
  if (u.max() > 700) throw RangeError("e^u overflows; blow-up is unresolved at this resolution");
  double cell = s.grid.dx * s.grid.dx;
  double acc = 0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += std::exp(u[k]) * s.area_element[k];
  return acc * cell;
}

double log_weighted_mass(const Surface& s, const Weight& w, const ScalarField& u) {
  require_same_grid(w.h, u);
  double m = u.max();
  double cell = s.grid.dx * s.grid.dx;
  double acc = 0;
  for (std::size_t k = 0; k < u.size(); ++k)
    acc += w.h[k] * std::exp(u[k] - m) * s.area_element[k];
  acc *= cell;
  if (!(acc > 0)) throw DegenerateWeightError("integral of h e^u vanished");
  return m + std::log(acc);
}

ScalarField weighted_density(const Surface& s, const Weight& w, const ScalarField& u) {
  require_same_grid(w.h, u);
  double m = u.max();
  ScalarField d(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) d[k] = w.h[k] * std::exp(u[k] - m);
  double total = integrate(s, d);
  if (!(total > 0)) throw DegenerateWeightError("integral of h e^u vanished");
  d *= 1.0 / total;
  return d;
}

double functional_j(const Surface& s, const Weight& w, double rho, const ScalarField& u) {
  double lwm = log_weighted_mass(s, w, u);
  ScalarField ged = grad_energy_density(s, u);
  ScalarField integrand(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) integrand[k] = 0.5 * ged[k] + rho * u[k];
  return integrate(s, integrand) - rho * lwm;
}

ScalarField gradient_map(const Surface& s, const Weight& w, double rho, const ScalarField& u) {
  ScalarField d = weighted_density(s, w, u);
  ScalarField m = laplace_beltrami(s, u);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = -m[k] - rho * (d[k] - 1.0);
  return m;
}

ScalarField jacobi_apply(const Surface& s, const Weight& w, double rho, const ScalarField& u,
                         const ScalarField& xi) {
  require_same_grid(u, xi);
  ScalarField d = weighted_density(s, w, u);
  double dxi = integrate(s, hadamard(d, xi));
  ScalarField out = laplace_beltrami(s, xi);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = -out[k] - rho * (d[k] * xi[k] - d[k] * dxi);
  return out;
}

double tm_gap(const Surface& s, const ScalarField& u) {
  require_finite(u, "u");
  double m = u.max();
  double cell = s.grid.dx * s.grid.dx;
  double acc = 0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += std::exp(u[k] - m) * s.area_element[k];
  double log_mass = m + std::log(acc * cell);
  double dirichlet = integrate(s, grad_energy_density(s, u));
  double mean_u = integrate(s, u);
  return dirichlet / (16.0 * std::numbers::pi) + mean_u - log_mass;
}

double dissipation(const Surface& s, const ScalarField& u, const ScalarField& u_t) {
  require_same_grid(u, u_t);
  ScalarField integrand(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k)
    integrand[k] = std::exp(u[k]) * u_t[k] * u_t[k];
  return integrate(s, integrand);
}

std::string Diagnostics::csv_header() {
  return "t,mass,weighted_mass,J,dissipation,fn_l2,residual_l2,max_u,h1,h2,tm_gap";
}

std::string Diagnostics::csv_row() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", t, mass,
                weighted_mass, j_value, dissipation, fn_l2, residual_l2, max_u, h1, h2, tm_gap);
  return buf;
}

Diagnostics compute_diagnostics(const Surface& s, const Weight& w, double rho,
                                const ScalarField& u, const ScalarField& u_t, double t) {
  Diagnostics d;
  d.t = t;
  d.mass = mass(s, u);
  d.weighted_mass = std::exp(log_weighted_mass(s, w, u));
  d.j_value = functional_j(s, w, rho, u);
  d.dissipation = dissipation(s, u, u_t);
  d.fn_l2 = std::sqrt(d.dissipation);
  ScalarField m = gradient_map(s, w, rho, u);
  d.residual_l2 = std::sqrt(integrate(s, hadamard(m, m)));
  d.max_u = u.max();
  SobolevNorms norms = sobolev_norms(s, u);
  d.h1 = norms.h1;
  d.h2 = norms.h2;
  d.tm_gap = tm_gap(s, u);
  return d;
}

}  // namespace kwflow
