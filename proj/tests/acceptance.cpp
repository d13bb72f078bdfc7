// Acceptance gate: twelve quantitative criteria, one line of output each.
// Exit code is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "kwflow/builtins.hpp"
#include "kwflow/flow.hpp"
#include "kwflow/green.hpp"
#include "kwflow/stationary.hpp"
#include "oracles.hpp"

using namespace kwflow;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kEightPi = 8.0 * std::numbers::pi;

int g_failures = 0;

void report(int idx, const char* title, bool pass, const std::string& detail) {
  std::printf("criterion %2d %-28s %s  %s\n", idx, title, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

double l2_mu(const Surface& s, const ScalarField& f) {
  return std::sqrt(integrate(s, hadamard(f, f)));
}

// Criterion 1: conservation of integral e^u dmu along the reference run.
// imex, n = 64, h = 1 + cos/2, rho = 8 pi, dt = 1e-4, t in [0, 1]; relative
// drift bounded by 1e-6.
void criterion_1() {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  Weight w = builtin_weight(g, "one_plus_half_cos");
  FlowConfig cfg;
  cfg.rho = kEightPi;
  cfg.dt_init = 1e-4;
  cfg.t_max = 1.0;
  cfg.residual_tol = 0;  // integrate the whole window
  cfg.sample_every = 200;
  RunResult rr = run(flat, w, ScalarField(g, 0.0), cfg);
  double m0 = rr.series.front().mass;
  double drift = 0;
  for (const Diagnostics& d : rr.series)
    drift = std::max(drift, std::abs(d.mass - m0) / m0);
  report(1, "mass conservation", drift <= 1e-6, fmt("drift %.3e bound 1e-6", drift));
}

// Criterion 2: discrete dissipation identity at dt = 1e-5 over 100 steps.
void criterion_2() {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  Weight w = builtin_weight(g, "one_plus_half_cos");
  FlowConfig cfg;
  cfg.rho = kEightPi;
  cfg.dt_init = 1e-5;
  FlowState st = make_initial_state(flat, ScalarField(g, 0.0), cfg.dt_init);
  double worst = 0;
  bool ok = true;
  for (int k = 0; k < 100; ++k) {
    double j_before = functional_j(flat, w, cfg.rho, st.u);
    double diss = dissipation(flat, st.u, time_derivative(flat, w, cfg.rho, st.u));
    FlowState next = step(st, flat, w, cfg);
    double dj = (functional_j(flat, w, cfg.rho, next.u) - j_before) / (next.t - st.t);
    double defect = std::abs(dj + diss);
    ok = ok && defect <= 1e-3 * (1.0 + diss);
    worst = std::max(worst, defect / (1.0 + diss));
    st = std::move(next);
  }
  report(2, "dissipation identity", ok, fmt("worst relative defect %.3e bound 1e-3", worst));
}

// Criterion 3: sampled J non-increasing on all shipped weights, including the
// ones with zeros, at rho = 8 pi.
void criterion_3() {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  bool ok = true;
  double worst = 0;
  for (const char* name : {"const", "one_plus_half_cos", "near_vanishing", "vanishing_patch"}) {
    FlowConfig cfg;
    cfg.rho = kEightPi;
    cfg.dt_init = 1e-3;
    cfg.t_max = 1.0;
    cfg.sample_every = 20;
    RunResult rr = run(flat, builtin_weight(g, name), ScalarField(g, 0.0), cfg);
    for (std::size_t k = 1; k < rr.series.size(); ++k) {
      double prev = rr.series[k - 1].j_value;
      double rise = rr.series[k].j_value - prev;
      worst = std::max(worst, rise / (1.0 + std::abs(prev)));
      ok = ok && rise <= 1e-10 * (1.0 + std::abs(prev));
    }
  }
  report(3, "energy monotonicity", ok, fmt("worst relative rise %.3e bound 1e-10", worst));
}

// Criterion 4: gradient and Hessian consistency against central differences,
// 20 random smooth pairs at n = 64.
void criterion_4() {
  Grid g = Grid::make(64);
  Surface s = make_surface(g, builtin_phi(g, "cos_x1", 0.4));
  Weight w = builtin_weight(g, "one_plus_half_cos");
  double worst_grad = 0, worst_hess = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    ScalarField u = random_smooth_field(g, 1000 + 2 * k, 4, 0.8);
    ScalarField xi = random_smooth_field(g, 1001 + 2 * k, 4, 1.0);
    double eps = 1e-5;
    double fd = (functional_j(s, w, kEightPi, u + eps * xi) -
                 functional_j(s, w, kEightPi, u - eps * xi)) /
                (2 * eps);
    double pairing = integrate(s, hadamard(gradient_map(s, w, kEightPi, u), xi));
    worst_grad = std::max(worst_grad, std::abs(fd - pairing) / (1.0 + std::abs(pairing)));

    ScalarField mfd = 1.0 / (2 * eps) *
                      (gradient_map(s, w, kEightPi, u + eps * xi) -
                       gradient_map(s, w, kEightPi, u - eps * xi));
    ScalarField lx = jacobi_apply(s, w, kEightPi, u, xi);
    worst_hess = std::max(worst_hess, l2_mu(s, mfd - lx) / (1e-30 + l2_mu(s, lx)));
  }
  bool ok = worst_grad <= 1e-6 && worst_hess <= 1e-4;
  report(4, "gradient/hessian consistency", ok,
         fmt("grad %.3e (1e-6), hess %.3e (1e-4)", worst_grad, worst_hess));
}

// Criterion 5: subcritical rho = 4 pi convergence for every builtin weight,
// and agreement of the flow limit with the Newton solution.
void criterion_5() {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  bool ok = true;
  double worst_res = 0, worst_gap = 0;
  for (const char* name : {"const", "one_plus_half_cos", "near_vanishing", "vanishing_patch"}) {
    Weight w = builtin_weight(g, name);
    FlowConfig cfg;
    cfg.rho = kFourPi;
    cfg.dt_init = 2e-3;
    cfg.t_max = 50.0;
    RunResult rr = run(flat, w, ScalarField(g, 0.0), cfg);
    double res = rr.series.back().residual_l2;
    worst_res = std::max(worst_res, res);
    if (rr.termination != Termination::converged || res >= 1e-6) {
      ok = false;
      continue;
    }
    NewtonResult nr = newton_solve(flat, w, kFourPi, ScalarField(g, 0.0));
    double gap = l2_mu(flat, gauge_mean_zero(flat, rr.final.u) - nr.u);
    worst_gap = std::max(worst_gap, gap);
    ok = ok && nr.converged && gap <= 1e-4;
  }
  report(5, "subcritical convergence", ok,
         fmt("residual %.3e (1e-6), flow-newton gap %.3e (1e-4)", worst_res, worst_gap));
}

// Criterion 6: critical rho = 8 pi convergence from constructed data below the
// barrier, n = 128; J stays below C0 all the way.
void criterion_6() {
  Grid g = Grid::make(128);
  Surface flat = flat_surface(g);
  Weight w = builtin_weight(g, "one_plus_half_cos");

  ConcentrationPotential cp = concentration_potential(flat, w, 8);
  GreenData gd = green_function(flat, cp.p0);
  fit_regular_part(flat, gd);
  auto eps = resolvable_eps_range(g);
  SeedResult sr = construct_subcritical_data(flat, w, gd, cp.c0, eps);
  if (!sr.ok) {
    report(6, "critical convergence", false, fmt("seed margin %.3e not below zero", sr.margin));
    return;
  }

  FlowConfig cfg;
  cfg.rho = kEightPi;
  cfg.dt_init = 1e-2;
  cfg.t_max = 80.0;
  cfg.sample_every = 50;
  cfg.blowup_max_u = 1e30;  // bounded-below J forbids blow-up; do not bail out
  RunResult rr = run(flat, w, sr.u0, cfg);
  bool below_barrier = true;
  for (const Diagnostics& d : rr.series) below_barrier = below_barrier && d.j_value < sr.c0;
  bool ok = rr.termination == Termination::converged &&
            rr.series.back().residual_l2 < 1e-6 && below_barrier;
  report(6, "critical convergence", ok,
         fmt("residual %.3e, J-C0 at end %.3e < 0", rr.series.back().residual_l2,
             rr.series.back().j_value - sr.c0));
}

// Criterion 7: annulus energy of the exact bubble against the closed form.
void criterion_7() {
  Grid g = Grid::make(1024);
  Surface flat = flat_surface(g);
  double eps = 0.04, a = 1.0;
  ScalarField u = synthetic_bubble(g, {0.5, 0.5}, eps, a);
  bool ok = true;
  double worst = 0;
  for (double r : {2.0, 5.0, 10.0}) {
    double numeric = neck_energy(flat, u, {0.5, 0.5}, 1e-9, eps * r);
    double exact = oracle::bubble_ball_energy(a, r);
    double rel = std::abs(numeric - exact) / exact;
    worst = std::max(worst, rel);
    ok = ok && rel <= 1e-3;
  }
  report(7, "bubble energy closed form", ok, fmt("worst relative error %.3e bound 1e-3", worst));
}

// Criterion 8: 8 pi quantization of synthetic bubbles; exactly one peak.
void criterion_8() {
  Grid g = Grid::make(256);
  Surface flat = flat_surface(g);
  Weight one = builtin_weight(g, "const");
  bool ok = true;
  double worst = 0;
  // The eps=1e-2 bubble peaks at -2 ln(eps) = 9.2, under the default
  // heuristic gate; the gate is a tunable, so lower it for this experiment.
  DetectConfig dc;
  dc.max_u_threshold = 8.0;
  for (double eps : {1e-2, 1e-3}) {
    ScalarField u = synthetic_bubble(g, {0.5, 0.5}, eps, std::numbers::pi);
    BlowupReport rep = detect(flat, one, u, 1.0, dc);
    double rel = std::abs(rep.quantization - kEightPi) / kEightPi;
    worst = std::max(worst, rel);
    ok = ok && rep.suspected && rep.peak_count == 1 && rel <= 0.02;
  }
  report(8, "quantization", ok, fmt("worst relative error %.3e bound 2e-2", worst));
}

// Criterion 9: Green pairing at n = 256, flat-torus A spread over 16 poles,
// and agreement with the Ewald lattice-sum oracle.
void criterion_9() {
  Grid g = Grid::make(256);
  Surface flat = flat_surface(g);

  std::array<int, 2> pole{37, 101};
  GreenData gp = green_function(flat, pole);
  ScalarField psi = sample(g, [](double x1, double x2) {
    return std::cos(2 * std::numbers::pi * x1) + 0.5 * std::sin(4 * std::numbers::pi * x2);
  });
  double lhs = integrate(flat, hadamard(gp.G, -1.0 * laplace_beltrami(flat, psi)));
  double rhs = kEightPi * (psi(pole[0], pole[1]) - integrate(flat, psi));
  double pairing_err = std::abs(lhs - rhs);

  double a_min = 1e300, a_max = -1e300, b_max = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      GreenData gd = green_function(flat, {i * 64 + 13, j * 64 + 41});
      fit_regular_part(flat, gd);
      a_min = std::min(a_min, gd.A);
      a_max = std::max(a_max, gd.A);
      b_max = std::max({b_max, std::abs(gd.b[0]), std::abs(gd.b[1])});
    }
  }
  double ewald_err = std::abs(0.5 * (a_min + a_max) - oracle::ewald_robin_constant());
  bool ok = pairing_err <= 1e-3 && (a_max - a_min) <= 1e-3 && b_max <= 1e-3 &&
            ewald_err <= 1e-3;
  report(9, "green function", ok,
         fmt("pairing %.3e, A spread %.3e", pairing_err, a_max - a_min) +
             fmt(", b %.3e, ewald %.3e (all 1e-3)", b_max, ewald_err));
}

// Criterion 10: C0 formula, the simplified-implies-full implication on the
// builtin weights, and a negative seed margin for the criterion-6 setup.
void criterion_10() {
  Grid g = Grid::make(128);
  Surface flat = flat_surface(g);

  Weight one = builtin_weight(g, "const");
  ConcentrationPotential cp = concentration_potential(flat, one, 8);
  double c0_expected = -kFourPi * cp.max_value - kEightPi * std::log(std::numbers::pi) - kEightPi;
  bool c0_ok = std::abs(cp.c0 - c0_expected) < 1e-12;

  bool implication_ok = true;
  for (const char* name : {"const", "one_plus_half_cos", "near_vanishing", "vanishing_patch"}) {
    ConditionReport r = check_condition(flat, builtin_weight(g, name), 8);
    if (r.simplified > 0 && !r.satisfied) implication_ok = false;
  }

  Weight w = builtin_weight(g, "one_plus_half_cos");
  ConcentrationPotential cpw = concentration_potential(flat, w, 8);
  GreenData gd = green_function(flat, cpw.p0);
  fit_regular_part(flat, gd);
  auto eps = resolvable_eps_range(g);
  SeedResult sr = construct_subcritical_data(flat, w, gd, cpw.c0, eps);

  bool ok = c0_ok && implication_ok && sr.margin < 0;
  report(10, "C0 and condition checker", ok,
         fmt("C0 defect %.3e, seed margin %.3e < 0", std::abs(cp.c0 - c0_expected), sr.margin));
}

// Criterion 11: continuous dependence on initial data along the criterion-1
// run; L2 perturbation 1e-6 stays within 1e-3 up to t = 1.
void criterion_11() {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  Weight w = builtin_weight(g, "one_plus_half_cos");
  FlowConfig cfg;
  cfg.rho = kEightPi;
  cfg.dt_init = 1e-4;
  cfg.t_max = 1.0;
  cfg.residual_tol = 0;

  ScalarField xi = random_smooth_field(g, 4242, 4, 1.0);
  double norm = l2_mu(flat, xi);
  xi *= 1e-6 / norm;

  FlowState a = make_initial_state(flat, ScalarField(g, 0.0), cfg.dt_init);
  FlowState b = make_initial_state(flat, xi, cfg.dt_init);
  double worst = l2_mu(flat, a.u - b.u);
  while (a.t < cfg.t_max) {
    a = step(a, flat, w, cfg);
    b = step(b, flat, w, cfg);
    if (a.step_index % 200 == 0 || a.t >= cfg.t_max)
      worst = std::max(worst, l2_mu(flat, a.u - b.u));
  }
  report(11, "continuous dependence", worst <= 1e-3,
         fmt("max L2 separation %.3e bound 1e-3", worst));
}

// Criterion 12: Gauss-Bonnet and conformal invariance on random metrics.
void criterion_12() {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  double worst_gb = 0, worst_ci = 0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    Surface s = make_surface(g, random_smooth_field(g, 7000 + k, 4, 1.0));
    worst_gb = std::max(worst_gb, std::abs(integrate(s, gauss_curvature(s))));
    ScalarField f = random_smooth_field(g, 7100 + k, 4, 1.0);
    double e_flat = integrate(flat, grad_energy_density(flat, f));
    double e_g = integrate(s, grad_energy_density(s, f));
    worst_ci = std::max(worst_ci, std::abs(e_g - e_flat) / (1.0 + e_flat));
  }
  bool ok = worst_gb <= 1e-8 && worst_ci <= 1e-10;
  report(12, "gauss-bonnet/conformal", ok,
         fmt("total curvature %.3e (1e-8), invariance %.3e (1e-10)", worst_gb, worst_ci));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures;
}
