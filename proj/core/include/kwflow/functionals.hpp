#ifndef KWFLOW_FUNCTIONALS_HPP
#define KWFLOW_FUNCTIONALS_HPP

#include <numbers>
#include <string>

#include "kwflow/surface.hpp"

namespace kwflow {

inline constexpr double kRhoCritical = 8.0 * std::numbers::pi;

/** Prescribed function h >= 0 with max h > 0. */
struct Weight {
  ScalarField h;
  double max_h = 0;
  double zero_fraction = 0;

  static Weight make(const ScalarField& h);
};

/** Conserved quantity: integral of e^u dmu_g. Throws RangeError for max u > 700. */
double mass(const Surface& s, const ScalarField& u);

/** log of integral h e^u dmu_g, evaluated with the max of u shifted out. */
double log_weighted_mass(const Surface& s, const Weight& w, const ScalarField& u);

/** Normalized density h e^u / integral(h e^u) dmu_g; integrates to one against dmu_g. */
ScalarField weighted_density(const Surface& s, const Weight& w, const ScalarField& u);

/** J(u) = integral(1/2 |grad u|^2 + rho u) dmu - rho ln integral(h e^u) dmu. */
double functional_j(const Surface& s, const Weight& w, double rho, const ScalarField& u);

/** Gradient map M(u) = -Lap_g u - rho (h e^u / W - 1); mean-zero against dmu_g. */
ScalarField gradient_map(const Surface& s, const Weight& w, double rho, const ScalarField& u);

/** Linearization of the gradient map; symmetric, kernel contains constants. */
ScalarField jacobi_apply(const Surface& s, const Weight& w, double rho, const ScalarField& u,
                         const ScalarField& xi);

/** Trudinger-Moser gap: 1/(16 pi) * Dirichlet + mean(u) - ln integral e^u dmu. */
double tm_gap(const Surface& s, const ScalarField& u);

/** Dissipation integral e^u u_t^2 dmu_g. */
double dissipation(const Surface& s, const ScalarField& u, const ScalarField& u_t);

/** One monitoring sample along a run. */
struct Diagnostics {
  double t = 0;
  double mass = 0;
  double weighted_mass = 0;
  double j_value = 0;
  double dissipation = 0;
  double fn_l2 = 0;
  double residual_l2 = 0;
  double max_u = 0;
  double h1 = 0;
  double h2 = 0;
  double tm_gap = 0;

  static std::string csv_header();
  std::string csv_row() const;
};

Diagnostics compute_diagnostics(const Surface& s, const Weight& w, double rho,
                                const ScalarField& u, const ScalarField& u_t, double t);

}  // namespace kwflow

#endif
