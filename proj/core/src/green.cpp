#include "kwflow/green.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "kwflow/spectral.hpp"

namespace kwflow {

namespace {
constexpr double kEightPi = 8.0 * std::numbers::pi;
}

GreenData green_function(const Surface& s, std::array<int, 2> pole) {
  Grid g = s.grid;
  if (pole[0] < 0 || pole[0] >= g.n || pole[1] < 0 || pole[1] >= g.n)
    throw Error("green pole off the grid");
  ScalarField rhs(g);
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = -kEightPi * s.area_element[k];
  rhs(pole[0], pole[1]) += kEightPi / (g.dx * g.dx);
  GreenData gd;
  gd.pole = pole;
  gd.G = spectral::poisson_inverse(rhs);
  gd.G += -integrate(s, gd.G);  // gauge: zero mean against dmu_g
  return gd;
}

void fit_regular_part(const Surface& s, GreenData& gd, double annulus_scale) {
  Grid g = s.grid;
  double dx = g.dx;
  double r_in = 4 * dx * annulus_scale, r_out = 16 * dx * annulus_scale;
  if (r_out > 0.25)
    throw GeometryError("fit annulus exceeds the injectivity scale; grid too coarse");
  double scale = std::exp(0.5 * s.phi(gd.pole[0], gd.pole[1]));
  std::array<double, 2> p{gd.pole[0] * dx, gd.pole[1] * dx};

  std::vector<std::array<double, 2>> ys;
  std::vector<double> targets;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      double y1 = scale * torus_delta(p[0], i * dx);
      double y2 = scale * torus_delta(p[1], j * dx);
      double r = std::sqrt(y1 * y1 + y2 * y2);
      if (r < r_in || r > r_out) continue;
      ys.push_back({y1, y2});
      targets.push_back(gd.G(i, j) + 4.0 * std::log(r));
    }
  }

  Eigen::MatrixXd m(static_cast<Eigen::Index>(ys.size()), 6);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(ys.size()));
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    auto [y1, y2] = ys[static_cast<std::size_t>(row)];
    m(row, 0) = 1.0;
    m(row, 1) = y1;
    m(row, 2) = y2;
    m(row, 3) = y1 * y1;
    m(row, 4) = 2.0 * y1 * y2;
    m(row, 5) = y2 * y2;
    rhs(row) = targets[static_cast<std::size_t>(row)];
  }
  Eigen::VectorXd coef = m.colPivHouseholderQr().solve(rhs);
  gd.A = coef(0);
  gd.b = {coef(1), coef(2)};
  gd.quad = {coef(3), coef(4), coef(5)};
  gd.fit_residual = std::sqrt((m * coef - rhs).squaredNorm() / static_cast<double>(m.rows()));
}

ConcentrationPotential concentration_potential(const Surface& s, const Weight& w,
                                               int pole_stride) {
  if (!(w.max_h > 0)) throw DegenerateWeightError("h vanishes identically");
  Grid g = s.grid;
  int stride = pole_stride > 0 ? pole_stride : 1;
  int m = g.n / stride;

  // A on the coarse pole lattice, then periodic bilinear interpolation.
  std::vector<double> coarse(static_cast<std::size_t>(m) * m);
  for (int ic = 0; ic < m; ++ic) {
    for (int jc = 0; jc < m; ++jc) {
      GreenData gd = green_function(s, {ic * stride, jc * stride});
      fit_regular_part(s, gd);
      coarse[static_cast<std::size_t>(ic) * m + jc] = gd.A;
    }
  }

  auto coarse_at = [&](int ic, int jc) {
    return coarse[static_cast<std::size_t>(((ic % m) + m) % m) * m + (((jc % m) + m) % m)];
  };

  ConcentrationPotential out;
  out.potential = ScalarField(g);
  for (int i = 0; i < g.n; ++i) {
    int ic = i / stride;
    double t1 = static_cast<double>(i % stride) / stride;
    for (int j = 0; j < g.n; ++j) {
      int jc = j / stride;
      double t2 = static_cast<double>(j % stride) / stride;
      double a = (1 - t1) * (1 - t2) * coarse_at(ic, jc) + t1 * (1 - t2) * coarse_at(ic + 1, jc) +
                 (1 - t1) * t2 * coarse_at(ic, jc + 1) + t1 * t2 * coarse_at(ic + 1, jc + 1);
      double h = w.h(i, j);
      out.potential(i, j) =
          h > 0 ? a + 2.0 * std::log(h) : -std::numeric_limits<double>::infinity();
    }
  }
  out.p0 = out.potential.argmax();
  out.max_value = out.potential(out.p0[0], out.p0[1]);
  out.c0 = -4.0 * std::numbers::pi * out.max_value - kEightPi * std::log(std::numbers::pi) -
           kEightPi;
  return out;
}

ConditionReport check_condition(const Surface& s, const Weight& w, int pole_stride) {
  ConcentrationPotential cp = concentration_potential(s, w, pole_stride);
  ConditionReport rep;
  rep.p0 = cp.p0;
  rep.c0 = cp.c0;
  rep.h_at_p0 = w.h(cp.p0[0], cp.p0[1]);
  if (!(rep.h_at_p0 > 0))
    throw DegenerateWeightError("h vanishes at the concentration point");

  GreenData gd = green_function(s, cp.p0);
  fit_regular_part(s, gd);
  rep.A = gd.A;
  rep.b = gd.b;

  double phi0 = s.phi(cp.p0[0], cp.p0[1]);
  auto [h1, h2] = spectral::gradient(w.h);
  ScalarField lap_h = spectral::laplacian(w.h);
  double hp = rep.h_at_p0;
  double g1 = h1(cp.p0[0], cp.p0[1]);
  double g2 = h2(cp.p0[0], cp.p0[1]);
  double lap_g_h = std::exp(-phi0) * lap_h(cp.p0[0], cp.p0[1]);
  rep.k = {std::exp(-0.5 * phi0) * g1, std::exp(-0.5 * phi0) * g2};

  ScalarField curvature = gauss_curvature(s);
  double k0 = curvature(cp.p0[0], cp.p0[1]);

  rep.lhs = lap_g_h + 2.0 * (gd.b[0] * rep.k[0] + gd.b[1] * rep.k[1]);
  rep.rhs = -(kEightPi + gd.b[0] * gd.b[0] + gd.b[1] * gd.b[1] - 2.0 * k0) * hp;
  // Lap_g ln h evaluated pointwise from flat derivatives of h.
  rep.simplified =
      std::exp(-phi0) * (lap_h(cp.p0[0], cp.p0[1]) / hp - (g1 * g1 + g2 * g2) / (hp * hp)) +
      kEightPi - 2.0 * k0;
  rep.satisfied = rep.lhs > rep.rhs;
  return rep;
}

}  // namespace kwflow
