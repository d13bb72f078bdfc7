#include "kwflow/flow.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "kwflow/io.hpp"
#include "kwflow/spectral.hpp"

namespace kwflow {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "Converged";
    case Termination::budget_exhausted: return "BudgetExhausted";
    case Termination::blowup_suspected: return "BlowupSuspected";
    case Termination::numerical_failure: return "NumericalFailure";
  }
  return "?";
}

std::string to_string(Scheme s) {
  return s == Scheme::imex ? "imex" : "explicit";
}

ScalarField time_derivative(const Surface& s, const Weight& w, double rho, const ScalarField& u) {
  if (u.min() < -700) throw RangeError("e^{-u} overflows in the explicit time derivative");
  ScalarField m = gradient_map(s, w, rho, u);
  ScalarField out(u.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -std::exp(-u[k]) * m[k];
  return out;
}

FlowState make_initial_state(const Surface& s, const ScalarField& u0, double dt_init) {
  require_finite(u0, "u0");
  FlowState st;
  st.u = u0;
  st.t = 0;
  st.step_index = 0;
  st.mass0 = mass(s, u0);
  st.dt = dt_init;
  return st;
}

namespace {

/**
 * One linearly implicit pass: solve (d/dt - Lap_flat) v = (d/dt) u + F by CG,
 * preconditioned with the constant-coefficient spectral inverse. d and F are
 * evaluated by the caller (at the left endpoint for the predictor, at the
 * midpoint for the corrector).
 */
ScalarField implicit_solve(const ScalarField& u, const ScalarField& d,
                           const ScalarField& source_flat, double dt, double cg_tol) {
  Grid g = u.grid();
  std::size_t sz = u.size();

  ScalarField b(g);
  for (std::size_t k = 0; k < sz; ++k) b[k] = d[k] / dt * u[k] + source_flat[k];

  auto apply = [&](const ScalarField& v) {
    ScalarField av = spectral::laplacian(v);
    for (std::size_t k = 0; k < sz; ++k) av[k] = d[k] / dt * v[k] - av[k];
    return av;
  };
  double d_mean = d.sum() / static_cast<double>(sz);
  auto precond = [&](const ScalarField& r) {
    return spectral::helmholtz_inverse(d_mean / dt, r);
  };
  auto dot = [sz](const ScalarField& a, const ScalarField& c) {
    double acc = 0;
    for (std::size_t k = 0; k < sz; ++k) acc += a[k] * c[k];
    return acc;
  };

  ScalarField x = u;  // warm start from the current state
  ScalarField r = b - apply(x);
  double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0) return x;
  ScalarField z = precond(r);
  ScalarField p = z;
  double rz = dot(r, z);
  for (int it = 0; it < 500; ++it) {
    if (std::sqrt(dot(r, r)) <= cg_tol * bnorm) break;
    ScalarField ap = apply(p);
    double alpha = rz / dot(p, ap);
    for (std::size_t k = 0; k < sz; ++k) x[k] += alpha * p[k];
    for (std::size_t k = 0; k < sz; ++k) r[k] -= alpha * ap[k];
    z = precond(r);
    double rz_new = dot(r, z);
    double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < sz; ++k) p[k] = z[k] + beta * p[k];
  }
  return x;
}

ScalarField imex_source(const Surface& s, const Weight& w, double rho, const ScalarField& u) {
  ScalarField dens = weighted_density(s, w, u);
  ScalarField f(u.grid());
  for (std::size_t k = 0; k < f.size(); ++k)
    f[k] = rho * (dens[k] - 1.0) * s.area_element[k];
  return f;
}

ScalarField exp_weight(const Surface& s, const ScalarField& u) {
  ScalarField d(u.grid());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::exp(u[k]) * s.area_element[k];
  return d;
}

ScalarField imex_update(const Surface& s, const Weight& w, const FlowConfig& cfg,
                        const ScalarField& u, double dt) {
  // Predictor with left-endpoint weights, then one corrector pass with the
  // exponential weight and source re-evaluated at the midpoint. The corrector
  // keeps the per-step mass defect at third order, which the conservation
  // budget needs at the step sizes used for long runs.
  ScalarField d0 = exp_weight(s, u);
  ScalarField f0 = imex_source(s, w, cfg.rho, u);
  ScalarField u_star = implicit_solve(u, d0, f0, dt, cfg.cg_tol);

  ScalarField u_mid = u;
  for (std::size_t k = 0; k < u.size(); ++k) u_mid[k] = 0.5 * (u[k] + u_star[k]);
  ScalarField d_mid = exp_weight(s, u_mid);
  ScalarField f_mid = imex_source(s, w, cfg.rho, u_mid);
  return implicit_solve(u, d_mid, f_mid, dt, cfg.cg_tol);
}

ScalarField rk4_update(const Surface& s, const Weight& w, double rho, const ScalarField& u,
                       double dt) {
  ScalarField k1 = time_derivative(s, w, rho, u);
  ScalarField u2 = u;
  for (std::size_t k = 0; k < u.size(); ++k) u2[k] = u[k] + 0.5 * dt * k1[k];
  ScalarField k2 = time_derivative(s, w, rho, u2);
  ScalarField u3 = u;
  for (std::size_t k = 0; k < u.size(); ++k) u3[k] = u[k] + 0.5 * dt * k2[k];
  ScalarField k3 = time_derivative(s, w, rho, u3);
  ScalarField u4 = u;
  for (std::size_t k = 0; k < u.size(); ++k) u4[k] = u[k] + dt * k3[k];
  ScalarField k4 = time_derivative(s, w, rho, u4);
  ScalarField out = u;
  for (std::size_t k = 0; k < u.size(); ++k)
    out[k] = u[k] + dt / 6.0 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
  return out;
}

}  // namespace

FlowState step(const FlowState& state, const Surface& s, const Weight& w, const FlowConfig& cfg) {
  double dt_cap = cfg.dt_max > 0 ? cfg.dt_max : cfg.dt_init;
  double dt = std::min(state.dt > 0 ? state.dt : cfg.dt_init, dt_cap);
  double mass_old = mass(s, state.u);
  double j_old = functional_j(s, w, cfg.rho, state.u);

  while (true) {
    double dt_try = dt;
    if (cfg.scheme == Scheme::explicit_rk4) {
      double emin = std::exp(state.u.min());
      double dt_stab = cfg.dt_safety * s.grid.dx * s.grid.dx * emin / 4.0;
      dt_try = std::min(dt, dt_stab);
    }
    ScalarField u_new = cfg.scheme == Scheme::imex
                            ? imex_update(s, w, cfg, state.u, dt_try)
                            : rk4_update(s, w, cfg.rho, state.u, dt_try);

    bool ok = u_new.all_finite();
    if (ok) {
      double mass_new = mass(s, u_new);
      if (std::abs(mass_new - mass_old) > cfg.mass_drift_tol * state.mass0) ok = false;
      if (ok) {
        double j_new = functional_j(s, w, cfg.rho, u_new);
        if (j_new > j_old + 1e-10 * (1.0 + std::abs(j_old))) ok = false;
      }
    }
    if (ok) {
      FlowState next;
      next.u = std::move(u_new);
      next.t = state.t + dt_try;
      next.step_index = state.step_index + 1;
      next.mass0 = state.mass0;
      next.dt = std::min(dt * 1.25, dt_cap);
      return next;
    }
    dt *= 0.5;
    if (dt < 1e-14) throw StepFailure("time step underflowed below 1e-14");
  }
}

RunResult run(const Surface& s, const Weight& w, const ScalarField& u0, const FlowConfig& cfg) {
  RunResult result;
  FlowState state = make_initial_state(s, u0, cfg.dt_init);

  auto sample = [&](const FlowState& st) {
    ScalarField u_t = time_derivative(s, w, cfg.rho, st.u);
    Diagnostics d = compute_diagnostics(s, w, cfg.rho, st.u, u_t, st.t);
    result.series.push_back(d);
    return d;
  };

  double next_snapshot = cfg.snapshot_interval;
  auto maybe_snapshot = [&](const FlowState& st) {
    if (cfg.snapshot_interval <= 0 || cfg.snapshot_dir.empty()) return;
    while (st.t >= next_snapshot) {
      char name[64];
      std::snprintf(name, sizeof(name), "u_t%g.kwf", st.t);
      write_kwf1(std::filesystem::path(cfg.snapshot_dir) / name, st.u);
      next_snapshot += cfg.snapshot_interval;
    }
  };

  Diagnostics d0 = sample(state);
  if (d0.residual_l2 < cfg.residual_tol) {
    result.final = std::move(state);
    result.termination = Termination::converged;
    return result;
  }

  long last_sampled = 0;
  while (state.t < cfg.t_max && state.step_index < cfg.step_max) {
    try {
      state = step(state, s, w, cfg);
    } catch (const Error&) {
      result.termination = Termination::numerical_failure;
      if (state.step_index != last_sampled) sample(state);
      result.final = std::move(state);
      return result;
    }
    maybe_snapshot(state);

    if (state.step_index % cfg.sample_every == 0 || state.t >= cfg.t_max ||
        state.step_index >= cfg.step_max) {
      Diagnostics d = sample(state);
      last_sampled = state.step_index;
      if (d.residual_l2 < cfg.residual_tol) {
        result.termination = Termination::converged;
        result.final = std::move(state);
        return result;
      }
      if (d.max_u > cfg.blowup_max_u) {
        DetectConfig dc;
        dc.max_u_threshold = cfg.blowup_max_u;
        BlowupReport rep = detect(s, w, state.u, state.mass0, dc);
        if (rep.suspected) {
          result.blowup = std::move(rep);
          result.termination = Termination::blowup_suspected;
          result.final = std::move(state);
          return result;
        }
      }
    }
  }

  if (state.step_index != last_sampled) sample(state);
  result.termination = Termination::budget_exhausted;
  result.final = std::move(state);
  return result;
}

}  // namespace kwflow
