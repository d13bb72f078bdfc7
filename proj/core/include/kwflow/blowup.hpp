#ifndef KWFLOW_BLOWUP_HPP
#define KWFLOW_BLOWUP_HPP

#include <span>
#include <utility>
#include <vector>

#include "kwflow/functionals.hpp"

namespace kwflow {

/** One fitted concentration peak. */
struct BubbleFit {
  std::array<double, 2> center{};  ///< subgrid peak location
  double lambda = 0;               ///< peak height max u
  double a = 0;                    ///< fitted bubble parameter
  double a_theory = 0;             ///< pi e^{phi(center)} / mass0
  double profile_residual = 0;     ///< sup norm misfit over the fit window
  double local_mass = 0;
  bool ok = false;
};

struct BlowupReport {
  bool suspected = false;
  std::vector<BubbleFit> fits;
  double quantization = 0;  ///< local mass at the dominant peak (target 8 pi)
  int peak_count = 0;
  double mean_u = 0;
};

struct DetectConfig {
  double max_u_threshold = 12.0;
  double mass_radius = 0.1;
  double mass_threshold = 7.0 * std::numbers::pi;
};

/**
 * Mass of the normalized density V e^u = rho h e^u / integral(h e^u) over the
 * geodesic-approximate ball of radius r about center. Requires r < 0.5.
 */
double local_mass(const Surface& s, const Weight& w, const ScalarField& u,
                  std::array<double, 2> center, double r);

/**
 * Radially averaged rescaled profile u(center + e^{-lambda/2} y) - lambda
 * sampled at |y| = s for each s in radii (normal coordinates at center).
 */
std::vector<std::pair<double, double>> rescaled_profile(const Surface& s, const ScalarField& u,
                                                        std::array<double, 2> center,
                                                        double lambda,
                                                        std::span<const double> radii);

/**
 * One-parameter least-squares fit of -2 ln(1 + a s^2) to a rescaled profile
 * over s <= 8. Garbage profiles come back with ok = false, never a throw.
 */
BubbleFit bubble_fit(std::span<const std::pair<double, double>> profile, double phi_at_center,
                     double mass0);

/** Half the Dirichlet energy of u over the annulus r_in <= dist <= r_out. */
double neck_energy(const Surface& s, const ScalarField& u, std::array<double, 2> center,
                   double r_in, double r_out);

/** Threshold-based concentration detector with per-peak bubble fits. */
BlowupReport detect(const Surface& s, const Weight& w, const ScalarField& u, double mass0,
                    const DetectConfig& cfg = {});

/** Quadratic 3x3 subgrid refinement of the discrete argmax. */
std::array<double, 2> refine_peak(const ScalarField& u, std::array<int, 2> node);

/** Synthetic bubble u = 2 ln(eps) - 2 ln(eps^2 + a r^2) centered at c. */
ScalarField synthetic_bubble(Grid g, std::array<double, 2> center, double eps, double a);

}  // namespace kwflow

#endif
