#include "kwflow/blowup.hpp"

#include <algorithm>
#include <cmath>

namespace kwflow {

namespace {

double phi_at(const Surface& s, std::array<double, 2> p) {
  return interpolate_bicubic(s.phi, p[0], p[1]);
}

}  // namespace

double local_mass(const Surface& s, const Weight& w, const ScalarField& u,
                  std::array<double, 2> center, double r) {
  if (!(r > 0) || r >= 0.5) throw GeometryError("local_mass radius must lie in (0, 0.5)");
  double scale = std::exp(0.5 * phi_at(s, center));
  ScalarField d = weighted_density(s, w, u);
  Grid g = s.grid;
  double cell = g.dx * g.dx;
  double acc = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      double dist = scale * torus_distance(center, {i * g.dx, j * g.dx});
      if (dist <= r) acc += d(i, j) * s.area_element(i, j);
    }
  }
  return kRhoCritical * acc * cell;
}

std::vector<std::pair<double, double>> rescaled_profile(const Surface& s, const ScalarField& u,
                                                        std::array<double, 2> center,
                                                        double lambda,
                                                        std::span<const double> radii) {
  require_same_grid(u, s.phi);
  double smax = 0;
  for (double r : radii) smax = std::max(smax, r);
  double blow_scale = std::exp(-0.5 * lambda);
  if (blow_scale * smax >= 0.25)
    throw GeometryError("rescaled window exceeds the chart; lambda too small for these radii");
  double chart_scale = std::exp(-0.5 * phi_at(s, center));
  constexpr int n_theta = 64;
  std::vector<std::pair<double, double>> profile;
  profile.reserve(radii.size());
  for (double r : radii) {
    double flat_r = chart_scale * blow_scale * r;
    double acc = 0;
    if (r == 0) {
      acc = interpolate_bicubic(u, center[0], center[1]);
    } else {
      for (int k = 0; k < n_theta; ++k) {
        double th = 2.0 * std::numbers::pi * k / n_theta;
        double x1 = center[0] + flat_r * std::cos(th);
        double x2 = center[1] + flat_r * std::sin(th);
        acc += interpolate_bicubic(u, x1 - std::floor(x1), x2 - std::floor(x2));
      }
      acc /= n_theta;
    }
    profile.emplace_back(r, acc - lambda);
  }
  return profile;
}

namespace {

double fit_sse(std::span<const std::pair<double, double>> pts, double a) {
  double sse = 0;
  for (auto [sr, val] : pts) {
    double model = -2.0 * std::log1p(a * sr * sr);
    double d = val - model;
    sse += d * d;
  }
  return sse;
}

}  // namespace

BubbleFit bubble_fit(std::span<const std::pair<double, double>> profile, double phi_at_center,
                     double mass0) {
  BubbleFit fit;
  fit.a_theory = std::numbers::pi * std::exp(phi_at_center) / mass0;

  std::vector<std::pair<double, double>> pts;
  for (auto& p : profile)
    if (p.first <= 8.0) pts.push_back(p);
  if (pts.size() < 4) return fit;

  double vmin = pts[0].second;
  for (auto& p : pts) vmin = std::min(vmin, p.second);
  if (vmin > -0.5) return fit;  // no decay, nothing bubble-like to fit

  // Golden-section on ln a; the misfit is unimodal for decaying profiles.
  double lo = -15.0, hi = 15.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = fit_sse(pts, std::exp(c)), fd = fit_sse(pts, std::exp(d));
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = fit_sse(pts, std::exp(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = fit_sse(pts, std::exp(d));
    }
  }
  double log_a = 0.5 * (lo + hi);
  if (log_a < -14.0 || log_a > 14.0) return fit;  // pinned to the bracket

  fit.a = std::exp(log_a);
  double sup = 0;
  for (auto [sr, val] : pts)
    sup = std::max(sup, std::abs(val + 2.0 * std::log1p(fit.a * sr * sr)));
  fit.profile_residual = sup;
  fit.ok = true;
  return fit;
}

double neck_energy(const Surface& s, const ScalarField& u, std::array<double, 2> center,
                   double r_in, double r_out) {
  if (!(0 < r_in && r_in < r_out && r_out < 0.5))
    throw GeometryError("neck annulus needs 0 < r_in < r_out < 0.5");
  double scale = std::exp(0.5 * phi_at(s, center));
  ScalarField ged = grad_energy_density(s, u);
  Grid g = s.grid;
  double cell = g.dx * g.dx;
  double acc = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      double dist = scale * torus_distance(center, {i * g.dx, j * g.dx});
      if (dist >= r_in && dist <= r_out) acc += ged(i, j) * s.area_element(i, j);
    }
  }
  return 0.5 * acc * cell;
}

std::array<double, 2> refine_peak(const ScalarField& u, std::array<int, 2> node) {
  int n = u.n();
  auto at = [&](int di, int dj) {
    return u(((node[0] + di) % n + n) % n, ((node[1] + dj) % n + n) % n);
  };
  double g1 = 0.5 * (at(1, 0) - at(-1, 0));
  double g2 = 0.5 * (at(0, 1) - at(0, -1));
  double h11 = at(1, 0) - 2 * at(0, 0) + at(-1, 0);
  double h22 = at(0, 1) - 2 * at(0, 0) + at(0, -1);
  double h12 = 0.25 * (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1));
  double det = h11 * h22 - h12 * h12;
  double o1 = 0, o2 = 0;
  if (det > 0 && h11 < 0) {  // proper interior maximum of the quadratic model
    o1 = -(h22 * g1 - h12 * g2) / det;
    o2 = -(h11 * g2 - h12 * g1) / det;
    o1 = std::clamp(o1, -0.5, 0.5);
    o2 = std::clamp(o2, -0.5, 0.5);
  }
  double dx = u.grid().dx;
  double x1 = (node[0] + o1) * dx;
  double x2 = (node[1] + o2) * dx;
  return {x1 - std::floor(x1), x2 - std::floor(x2)};
}

BlowupReport detect(const Surface& s, const Weight& w, const ScalarField& u, double mass0,
                    const DetectConfig& cfg) {
  BlowupReport report;
  report.mean_u = integrate(s, u);
  double umax = u.max();
  if (umax <= cfg.max_u_threshold) return report;

  int n = u.n();
  std::vector<std::array<int, 2>> peaks;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = u(i, j);
      if (v < umax - 2.0) continue;
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (u(((i + di) % n + n) % n, ((j + dj) % n + n) % n) >= v) {
            is_peak = false;
            break;
          }
        }
      if (is_peak) peaks.push_back({i, j});
    }
  }
  report.peak_count = static_cast<int>(peaks.size());

  std::vector<double> radii;
  for (int k = 0; k <= 32; ++k) radii.push_back(8.0 * k / 32.0);

  for (auto node : peaks) {
    BubbleFit fit;
    fit.center = refine_peak(u, node);
    fit.lambda = u(node[0], node[1]);
    fit.local_mass = local_mass(s, w, u, fit.center, cfg.mass_radius);
    double phi_c = interpolate_bicubic(s.phi, fit.center[0], fit.center[1]);
    try {
      auto profile = rescaled_profile(s, u, fit.center, fit.lambda, radii);
      BubbleFit fitted = bubble_fit(profile, phi_c, mass0);
      fitted.center = fit.center;
      fitted.lambda = fit.lambda;
      fitted.local_mass = fit.local_mass;
      fit = fitted;
    } catch (const GeometryError&) {
      fit.a_theory = std::numbers::pi * std::exp(phi_c) / mass0;
    }
    report.fits.push_back(fit);
  }

  double peak_mass = 0;
  for (auto& f : report.fits) peak_mass = std::max(peak_mass, f.local_mass);
  report.quantization = peak_mass;
  report.suspected = peak_mass > cfg.mass_threshold;
  return report;
}

ScalarField synthetic_bubble(Grid g, std::array<double, 2> center, double eps, double a) {
  ScalarField u(g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      double r = torus_distance(center, {i * g.dx, j * g.dx});
      u(i, j) = 2.0 * std::log(eps) - std::log(eps * eps + a * r * r) * 2.0;
    }
  }
  return u;
}

}  // namespace kwflow
