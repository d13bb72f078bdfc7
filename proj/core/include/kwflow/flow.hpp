#ifndef KWFLOW_FLOW_HPP
#define KWFLOW_FLOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "kwflow/blowup.hpp"
#include "kwflow/functionals.hpp"

namespace kwflow {

enum class Scheme { explicit_rk4, imex };
enum class Termination { converged, budget_exhausted, blowup_suspected, numerical_failure };

std::string to_string(Termination t);
std::string to_string(Scheme s);

struct FlowConfig {
  double rho = kRhoCritical;
  Scheme scheme = Scheme::imex;
  double dt_init = 1e-3;
  double dt_safety = 0.2;   ///< explicit-scheme CFL factor
  double dt_max = 0;        ///< 0 means "no growth beyond dt_init"
  double t_max = 10.0;
  long step_max = 1000000;
  double residual_tol = 1e-6;
  double blowup_max_u = 12.0;
  int sample_every = 100;
  double mass_drift_tol = 1e-8;  ///< per-step rejection threshold, relative to mass0
  double cg_tol = 1e-10;
  /** Optional KWF1 snapshot emission. */
  double snapshot_interval = 0;
  std::string snapshot_dir;
};

struct FlowState {
  ScalarField u;
  double t = 0;
  long step_index = 0;
  double mass0 = 0;
  double dt = 0;  ///< current accepted step size
};

struct RunResult {
  FlowState final;
  std::vector<Diagnostics> series;
  Termination termination = Termination::budget_exhausted;
  std::optional<BlowupReport> blowup;
};

/** u_t = e^{-u} (Lap_g u + rho (h e^u / W - 1)) = -e^{-u} M(u). */
ScalarField time_derivative(const Surface& s, const Weight& w, double rho, const ScalarField& u);

FlowState make_initial_state(const Surface& s, const ScalarField& u0, double dt_init);

/**
 * One accepted step. Rejects and halves dt on mass drift beyond
 * mass_drift_tol * mass0 or any J increase beyond rounding; throws StepFailure
 * once dt underflows 1e-14.
 */
FlowState step(const FlowState& state, const Surface& s, const Weight& w, const FlowConfig& cfg);

RunResult run(const Surface& s, const Weight& w, const ScalarField& u0, const FlowConfig& cfg);

}  // namespace kwflow

#endif
