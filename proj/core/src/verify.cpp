#include "kwflow/verify.hpp"

#include <cmath>
#include <numbers>

#include "kwflow/blowup.hpp"
#include "kwflow/builtins.hpp"
#include "kwflow/flow.hpp"
#include "kwflow/green.hpp"
#include "kwflow/spectral.hpp"
#include "kwflow/stationary.hpp"

namespace kwflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void push(std::vector<CheckResult>& out, std::string name, double observed, double bound) {
  out.push_back({std::move(name), observed <= bound, observed, bound});
}

double l2_flat(const ScalarField& f) {
  double acc = 0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += f[k] * f[k];
  return std::sqrt(acc * f.grid().dx * f.grid().dx);
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(VerifyLevel level, std::uint64_t seed) {
  std::vector<CheckResult> out;
  int n = level == VerifyLevel::quick ? 64 : 256;
  Grid g = Grid::make(n);

  // Spectral round trips on a random band-limited field.
  ScalarField f = random_smooth_field(g, seed, 4, 1.0);
  {
    ScalarField lap = spectral::laplacian(f);
    ScalarField back = spectral::poisson_inverse(lap);
    back *= -1.0;
    ScalarField diff = back - f;
    double mean = diff.sum() / static_cast<double>(diff.size());
    diff += -mean;  // inverse fixes the gauge, not the mean
    push(out, "poisson round-trip", l2_flat(diff), 1e-10);
  }
  {
    auto [d1, d2] = spectral::gradient(f);
    double dirichlet = 0;
    for (std::size_t k = 0; k < d1.size(); ++k) dirichlet += d1[k] * d1[k] + d2[k] * d2[k];
    dirichlet *= g.dx * g.dx;
    double pairing = -hadamard(f, spectral::laplacian(f)).sum() * g.dx * g.dx;
    push(out, "gradient/laplacian integration by parts",
         std::abs(dirichlet - pairing) / (1 + dirichlet), 1e-10);
  }

  Surface s = make_surface(g, builtin_phi(g, "cos_x1", 0.5));
  push(out, "unit area normalization", std::abs(integrate(s, ScalarField(g, 1.0)) - 1.0), 1e-13);
  push(out, "gauss-bonnet total curvature",
       std::abs(integrate(s, gauss_curvature(s))), 1e-8);
  {
    double e_flat = 0;
    auto [d1, d2] = spectral::gradient(f);
    for (std::size_t k = 0; k < d1.size(); ++k) e_flat += d1[k] * d1[k] + d2[k] * d2[k];
    e_flat *= g.dx * g.dx;
    double e_g = integrate(s, grad_energy_density(s, f));
    push(out, "dirichlet energy conformal invariance", std::abs(e_g - e_flat) / (1 + e_flat),
         1e-10);
  }

  Weight w = builtin_weight(g, "one_plus_half_cos");
  {
    ScalarField u = random_smooth_field(g, seed + 1, 3, 0.5);
    ScalarField d = weighted_density(s, w, u);
    push(out, "weighted density normalization", std::abs(integrate(s, d) - 1.0), 1e-12);
    ScalarField m = gradient_map(s, w, kRhoCritical, u);
    push(out, "gradient map mean-zero", std::abs(integrate(s, m)), 1e-10);

    // Directional derivative of J against the gradient map.
    ScalarField xi = random_smooth_field(g, seed + 2, 3, 0.5);
    double eps = 1e-5;
    ScalarField up = u, um = u;
    for (std::size_t k = 0; k < u.size(); ++k) {
      up[k] += eps * xi[k];
      um[k] -= eps * xi[k];
    }
    double fd = (functional_j(s, w, kRhoCritical, up) - functional_j(s, w, kRhoCritical, um)) /
                (2 * eps);
    double pairing = integrate(s, hadamard(m, xi));
    push(out, "functional gradient consistency",
         std::abs(fd - pairing) / (1 + std::abs(pairing)), 1e-6);
  }

  {
    FlowConfig cfg;
    cfg.rho = kRhoCritical;
    cfg.dt_init = 1e-4;
    cfg.t_max = 20 * cfg.dt_init;
    cfg.sample_every = 1;
    cfg.residual_tol = 0;  // run the full short window
    RunResult rr = run(s, w, ScalarField(g, 0.0), cfg);
    double m0 = rr.series.front().mass;
    double drift = 0;
    double j_prev = rr.series.front().j_value;
    double j_rise = 0;
    for (const Diagnostics& d : rr.series) {
      drift = std::max(drift, std::abs(d.mass - m0) / m0);
      j_rise = std::max(j_rise, d.j_value - j_prev);
      j_prev = d.j_value;
    }
    push(out, "flow mass conservation (short imex window)", drift, 1e-8);
    push(out, "flow energy monotonicity (short imex window)", j_rise, 1e-10);
  }

  {
    GreenData gd = green_function(s, {n / 2, n / 4});
    fit_regular_part(s, gd);
    // Distributional pairing against a band-limited test function.
    ScalarField psi = sample(g, [](double x1, double x2) {
      return std::cos(kTwoPi * x1) + 0.5 * std::sin(2 * kTwoPi * x2);
    });
    double lhs = integrate(s, hadamard(gd.G, -1.0 * laplace_beltrami(s, psi)));
    double rhs = 8 * std::numbers::pi *
                 (psi(gd.pole[0], gd.pole[1]) - integrate(s, psi));
    push(out, "green distributional pairing", std::abs(lhs - rhs) / (1 + std::abs(rhs)), 1e-3);

    GreenData flat_gd = green_function(flat_surface(g), {n / 3, n / 5});
    fit_regular_part(flat_surface(g), flat_gd);
    push(out, "flat green regular-part gradient",
         std::hypot(flat_gd.b[0], flat_gd.b[1]), 1e-3);
  }

  {
    ScalarField u = synthetic_bubble(g, {0.5, 0.5}, 1e-2, std::numbers::pi);
    Surface flat = flat_surface(g);
    Weight one = builtin_weight(g, "const");
    double q = local_mass(flat, one, u, {0.5, 0.5}, 0.1);
    push(out, "bubble quantization", std::abs(q - 8 * std::numbers::pi) / (8 * std::numbers::pi),
         0.02);
  }

  {
    Weight wv = builtin_weight(g, "vanishing_patch");
    NewtonResult nr = newton_solve(s, wv, 4 * std::numbers::pi, ScalarField(g, 0.0));
    push(out, "subcritical newton residual", nr.residual, 1e-8);
  }

  return out;
}

}  // namespace kwflow
