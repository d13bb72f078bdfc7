#ifndef KWFLOW_GREEN_HPP
#define KWFLOW_GREEN_HPP

#include <array>

#include "kwflow/functionals.hpp"
#include "kwflow/surface.hpp"

namespace kwflow {

/**
 * Green field of -Lap_g with source 8 pi (delta_p - 1), zero mean against
 * dmu_g, together with the fitted local expansion
 *   G = -4 ln r + A + b.y + y^T C y + O(r^3)
 * in normal coordinates y at the pole.
 */
struct GreenData {
  std::array<int, 2> pole{};
  ScalarField G;
  double A = 0;
  std::array<double, 2> b{};
  std::array<double, 3> quad{};  ///< c1, c2, c3 (reported only)
  double fit_residual = 0;
};

GreenData green_function(const Surface& s, std::array<int, 2> pole);

/**
 * Least-squares fit over the annulus r in [4 dx, 16 dx] (times annulus_scale);
 * fills A, b, quad.
 */
void fit_regular_part(const Surface& s, GreenData& gd, double annulus_scale = 1.0);

struct ConcentrationPotential {
  ScalarField potential;      ///< A + 2 ln h, -inf where h = 0
  std::array<int, 2> p0{};    ///< argmax, first in row-major order on ties
  double max_value = 0;
  double c0 = 0;              ///< -4 pi max - 8 pi ln pi - 8 pi
};

/**
 * A(q) evaluated on a subsampled pole lattice (every `pole_stride`-th node
 * each direction) and interpolated, plus 2 ln h.
 */
ConcentrationPotential concentration_potential(const Surface& s, const Weight& w,
                                               int pole_stride = 4);

struct ConditionReport {
  std::array<int, 2> p0{};
  double lhs = 0;
  double rhs = 0;
  double simplified = 0;  ///< Lap_g ln h(p0) + 8 pi - 2 K(p0)
  bool satisfied = false;
  std::array<double, 2> k{};  ///< grad_g h at p0 in normal coordinates
  std::array<double, 2> b{};
  double A = 0;
  double c0 = 0;
  double h_at_p0 = 0;
};

/** Full convergence condition and its simplified sufficient form at p0. */
ConditionReport check_condition(const Surface& s, const Weight& w, int pole_stride = 4);

}  // namespace kwflow

#endif
