#include "kwflow/builtins.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kwflow/errors.hpp"

namespace kwflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ScalarField builtin_phi(Grid g, const std::string& name, double amplitude) {
  if (name == "zero") return ScalarField(g, 0.0);
  if (name == "cos_x1")
    return sample(g, [&](double x1, double) { return amplitude * std::cos(kTwoPi * x1); });
  if (name == "cos_both")
    return sample(g, [&](double x1, double x2) {
      return amplitude * (std::cos(kTwoPi * x1) + std::cos(kTwoPi * x2));
    });
  throw InvalidFieldError("unknown builtin phi: " + name);
}

Weight builtin_weight(Grid g, const std::string& name) {
  if (name == "const") return Weight::make(ScalarField(g, 1.0));
  if (name == "one_plus_half_cos")
    return Weight::make(
        sample(g, [](double x1, double) { return 1.0 + 0.5 * std::cos(kTwoPi * x1); }));
  if (name == "near_vanishing")
    return Weight::make(
        sample(g, [](double x1, double) { return 1.0 + 0.999 * std::cos(kTwoPi * x1); }));
  if (name == "vanishing_patch") {
    // C^inf bump centered at x1 = 1/4, supported on (0, 1/2); h = 0 on the
    // other half of the torus.
    return Weight::make(sample(g, [](double x1, double) {
      double t = (x1 - 0.25) / 0.25;
      if (std::abs(t) >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - t * t));
    }));
  }
  throw InvalidFieldError("unknown builtin weight: " + name);
}

ScalarField random_smooth_field(Grid g, std::uint64_t seed, int kmax, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ScalarField f(g, 0.0);
  // Real combination of low modes; coefficient draw order is fixed so the
  // field is independent of n.
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double damp = std::exp(-0.5 * (k1 * k1 + k2 * k2));
      double a = gauss(rng) * damp;
      double b = gauss(rng) * damp;
      for (int i = 0; i < g.n; ++i) {
        double x1 = i * g.dx;
        for (int j = 0; j < g.n; ++j) {
          double x2 = j * g.dx;
          double theta = kTwoPi * (k1 * x1 + k2 * x2);
          f(i, j) += a * std::cos(theta) + b * std::sin(theta);
        }
      }
    }
  }
  double sup = std::max(std::abs(f.max()), std::abs(f.min()));
  if (sup > 0) f *= amplitude / sup;
  return f;
}

}  // namespace kwflow
