#include "kwflow/stationary.hpp"

#include <cmath>

#include "kwflow/spectral.hpp"

namespace kwflow {

namespace {

double inner_mu(const Surface& s, const ScalarField& a, const ScalarField& b) {
  return integrate(s, hadamard(a, b));
}

ScalarField project_mean_zero(const Surface& s, const ScalarField& f) {
  return gauge_mean_zero(s, f);
}

/**
 * CG for L xi = b on the mean-zero subspace, in the L^2(dmu_g) inner product
 * where L is symmetric. Returns false on indefinite curvature.
 */
bool cg_solve(const Surface& s, const Weight& w, double rho, const ScalarField& u,
              const ScalarField& b, ScalarField& xi, double rel_tol, int max_iter) {
  double shift = std::max(rho, 1.0);
  auto precond = [&](const ScalarField& r) {
    ScalarField weighted = hadamard(r, s.area_element);
    return project_mean_zero(s, spectral::helmholtz_inverse(shift, weighted));
  };

  xi = ScalarField(u.grid(), 0.0);
  ScalarField r = b;
  double bnorm = std::sqrt(inner_mu(s, b, b));
  if (bnorm == 0) return true;
  ScalarField z = precond(r);
  ScalarField p = z;
  double rz = inner_mu(s, r, z);
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(inner_mu(s, r, r)) <= rel_tol * bnorm) return true;
    ScalarField lp = project_mean_zero(s, jacobi_apply(s, w, rho, u, p));
    double curvature = inner_mu(s, p, lp);
    if (!(curvature > 0)) return false;
    double alpha = rz / curvature;
    for (std::size_t k = 0; k < xi.size(); ++k) xi[k] += alpha * p[k];
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= alpha * lp[k];
    z = precond(r);
    double rz_new = inner_mu(s, r, z);
    double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = z[k] + beta * p[k];
  }
  return true;
}

}  // namespace

NewtonResult newton_solve(const Surface& s, const Weight& w, double rho,
                          const ScalarField& u_init, double tol, int max_iter) {
  NewtonResult result;
  result.u = project_mean_zero(s, u_init);

  auto residual_norm = [&](const ScalarField& u) {
    ScalarField m = gradient_map(s, w, rho, u);
    return std::sqrt(inner_mu(s, m, m));
  };

  result.residual = residual_norm(result.u);
  for (int it = 0; it < max_iter; ++it) {
    if (result.residual < tol) {
      result.converged = true;
      return result;
    }
    ScalarField rhs = project_mean_zero(s, gradient_map(s, w, rho, result.u));
    rhs *= -1.0;
    ScalarField xi;
    if (!cg_solve(s, w, rho, result.u, rhs, xi, 1e-10, 400)) {
      result.linear_solver_breakdown = true;
      // Fall back to the steepest-descent direction for this iteration.
      xi = rhs;
    }

    double step_scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      ScalarField trial = result.u;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += step_scale * xi[k];
      trial = project_mean_zero(s, trial);
      double res = residual_norm(trial);
      if (res < result.residual) {
        result.u = std::move(trial);
        result.residual = res;
        improved = true;
        break;
      }
      step_scale *= 0.5;
    }
    ++result.iterations;
    if (!improved) break;  // damping exhausted; report the best iterate
  }
  result.converged = result.residual < tol;
  return result;
}

SeedResult construct_subcritical_data(const Surface& s, const Weight& w, const GreenData& gd,
                                      double c0, std::span<const double> eps_range,
                                      double delta) {
  SeedResult out;
  out.c0 = c0;
  Grid g = s.grid;
  double phi0 = s.phi(gd.pole[0], gd.pole[1]);
  double scale = std::exp(0.5 * phi0);
  std::array<double, 2> p{gd.pole[0] * g.dx, gd.pole[1] * g.dx};

  // Quintic blend weight: 1 on the core, 0 on the tail.
  auto blend = [&](double r) {
    if (r <= delta) return 1.0;
    if (r >= 2 * delta) return 0.0;
    double t = (2 * delta - r) / delta;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  };

  double best_j = 0;
  bool have_best = false;
  for (double eps : eps_range) {
    double c_core = gd.A - 4.0 * std::log(delta) + 2.0 * std::log(eps * eps + delta * delta);
    ScalarField u(g);
    for (int i = 0; i < g.n; ++i) {
      for (int j = 0; j < g.n; ++j) {
        double r = scale * torus_distance(p, {i * g.dx, j * g.dx});
        double wgt = blend(r);
        double tail = gd.G(i, j);
        double core = -2.0 * std::log(eps * eps + r * r) + c_core;
        u(i, j) = wgt * core + (1.0 - wgt) * tail;
      }
    }
    double j_val = functional_j(s, w, kRhoCritical, u);
    out.scan.emplace_back(eps, j_val);
    if (!have_best || j_val < best_j) {
      have_best = true;
      best_j = j_val;
      out.u0 = std::move(u);
      out.eps = eps;
      out.j0 = j_val;
    }
  }
  out.margin = out.j0 - c0;
  out.ok = have_best && out.margin < 0;
  return out;
}

std::vector<double> default_eps_range(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    out.push_back(lo * std::pow(hi / lo, t));
  }
  return out;
}

std::vector<double> resolvable_eps_range(const Grid& g, double hi, int count) {
  return default_eps_range(4.0 * g.dx, hi, count);
}

}  // namespace kwflow
