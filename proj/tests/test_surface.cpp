#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kwflow/builtins.hpp"
#include "kwflow/spectral.hpp"
#include "kwflow/surface.hpp"
#include "oracles.hpp"

using namespace kwflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}
}  // namespace

TEST_CASE("grid construction rejects bad sizes") {
  CHECK_NOTHROW(Grid::make(16));
  CHECK_NOTHROW(Grid::make(256));
  CHECK_THROWS_AS(Grid::make(8), Error);
  CHECK_THROWS_AS(Grid::make(48), Error);
  CHECK(Grid::make(64).dx * 64 == 1.0);
}

TEST_CASE("make_surface normalizes to unit area") {
  Grid g = Grid::make(64);

  Surface flat = make_surface(g, ScalarField(g, 0.0));
  CHECK(flat.phi.max() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(integrate(flat, ScalarField(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-13));

  Surface shifted = make_surface(g, ScalarField(g, std::log(4.0)));
  CHECK(std::abs(shifted.phi.max()) < 1e-12);

  // phi_raw = sin(2 pi x1): the normalizing shift is -ln I_0(1).
  Surface s = make_surface(g, sample(g, [](double x1, double) { return std::sin(kTwoPi * x1); }));
  double shift = s.phi(0, 0) - 0.0;  // sin vanishes at x1 = 0
  CHECK(shift == doctest::Approx(-std::log(oracle::bessel_i0(1.0))).epsilon(1e-10));
  CHECK(integrate(s, ScalarField(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));

  ScalarField bad(g, 0.0);
  bad(3, 3) = std::nan("");
  CHECK_THROWS_AS(make_surface(g, bad), InvalidFieldError);
}

TEST_CASE("integrate oracle values") {
  Grid g = Grid::make(64);
  Surface s = flat_surface(g);
  ScalarField cos2 = sample(g, [](double x1, double) {
    double c = std::cos(kTwoPi * x1);
    return c * c;
  });
  CHECK(integrate(s, cos2) == doctest::Approx(0.5).epsilon(1e-13));

  ScalarField esin = sample(g, [](double x1, double) { return std::exp(std::sin(kTwoPi * x1)); });
  CHECK(integrate(s, esin) == doctest::Approx(oracle::bessel_i0(1.0)).epsilon(1e-10));
}

TEST_CASE("laplace_beltrami eigenfunction and FD oracle") {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  ScalarField c1 = sample(g, [](double x1, double) { return std::cos(kTwoPi * x1); });

  ScalarField lap = laplace_beltrami(flat, c1);
  ScalarField expected = sample(g, [](double x1, double) {
    return -4.0 * std::numbers::pi * std::numbers::pi * std::cos(kTwoPi * x1);
  });
  CHECK(max_abs_diff(lap, expected) < 1e-10);

  CHECK(laplace_beltrami(flat, ScalarField(g, 3.0)).max() == doctest::Approx(0.0).epsilon(1e-12));

  // Non-flat metric: compare against a 5-point finite-difference oracle on
  // refining grids; the FD error is O(dx^2), so the mismatch must shrink ~4x.
  auto fd_error = [](int n) {
    Grid gg = Grid::make(n);
    Surface s = make_surface(gg, sample(gg, [](double, double x2) {
      return 0.3 * std::sin(kTwoPi * x2);
    }));
    ScalarField f = sample(gg, [](double x1, double) { return std::cos(kTwoPi * x1); });
    ScalarField lapg = laplace_beltrami(s, f);
    double err = 0;
    for (int i = 0; i < gg.n; ++i) {
      for (int j = 0; j < gg.n; ++j) {
        int ip = (i + 1) % gg.n, im = (i + gg.n - 1) % gg.n;
        int jp = (j + 1) % gg.n, jm = (j + gg.n - 1) % gg.n;
        double flat_fd =
            (f(ip, j) + f(im, j) + f(i, jp) + f(i, jm) - 4.0 * f(i, j)) / (gg.dx * gg.dx);
        double fd = std::exp(-s.phi(i, j)) * flat_fd;
        err = std::max(err, std::abs(fd - lapg(i, j)));
      }
    }
    return err;
  };
  double e64 = fd_error(64), e128 = fd_error(128);
  CHECK(e128 < e64);
  CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("grad_energy_density closed form and conformal invariance") {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  ScalarField f = sample(g, [](double x1, double) { return std::cos(kTwoPi * x1); });

  CHECK(grad_energy_density(flat, ScalarField(g, 2.0)).max() < 1e-20);

  ScalarField ged = grad_energy_density(flat, f);
  ScalarField expected = sample(g, [](double x1, double) {
    double ss = std::sin(kTwoPi * x1);
    return 4.0 * std::numbers::pi * std::numbers::pi * ss * ss;
  });
  CHECK(max_abs_diff(ged, expected) < 1e-9);
  CHECK(integrate(flat, ged) ==
        doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-12));

  // Conformal invariance for a random metric.
  Surface s = make_surface(g, random_smooth_field(g, 77, 4, 0.8));
  ScalarField u = random_smooth_field(g, 78, 4, 1.0);
  double e_flat = integrate(flat, grad_energy_density(flat, u));
  double e_g = integrate(s, grad_energy_density(s, u));
  CHECK(std::abs(e_g - e_flat) / (1 + e_flat) < 1e-10);
}

TEST_CASE("gauss curvature formula and Gauss-Bonnet") {
  Grid g = Grid::make(64);
  CHECK(gauss_curvature(flat_surface(g)).max() == doctest::Approx(0.0).epsilon(1e-14));

  double eps = 0.05;
  Surface s = make_surface(g, builtin_phi(g, "cos_x1", eps));
  ScalarField k = gauss_curvature(s);
  ScalarField expected(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      expected(i, j) = 2.0 * std::numbers::pi * std::numbers::pi * eps *
                       std::exp(-s.phi(i, j)) * std::cos(kTwoPi * i * g.dx);
  CHECK(max_abs_diff(k, expected) < 1e-9);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Surface r = make_surface(g, random_smooth_field(g, 100 + seed, 4, 1.0));
    CHECK(std::abs(integrate(r, gauss_curvature(r))) < 1e-8);
  }
}

TEST_CASE("poisson_solve eigenfunction, compatibility, round trip") {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);
  ScalarField f = sample(g, [](double x1, double) { return std::cos(kTwoPi * x1); });
  ScalarField v = poisson_solve(flat, f);
  ScalarField expected = sample(g, [](double x1, double) {
    return std::cos(kTwoPi * x1) / (4.0 * std::numbers::pi * std::numbers::pi);
  });
  CHECK(max_abs_diff(v, expected) < 1e-12);

  CHECK_THROWS_AS(poisson_solve(flat, ScalarField(g, 0.1)), SolvabilityError);

  ScalarField r = random_smooth_field(g, 5, 4, 1.0);
  r += -r.sum() / static_cast<double>(r.size());
  ScalarField w = poisson_solve(flat, r);
  ScalarField back = -1.0 * spectral::laplacian(w);
  double num = 0, den = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    num += (back[k] - r[k]) * (back[k] - r[k]);
    den += r[k] * r[k];
  }
  CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("sobolev norms closed forms") {
  Grid g = Grid::make(64);
  Surface flat = flat_surface(g);

  auto z = sobolev_norms(flat, ScalarField(g, 0.0));
  CHECK(z.l2 == 0.0);
  CHECK(z.h1 == 0.0);
  CHECK(z.h2 == 0.0);

  auto c = sobolev_norms(flat, ScalarField(g, 3.0));
  CHECK(c.l2 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(c.h1 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(c.h2 == doctest::Approx(3.0).epsilon(1e-13));

  double p2 = std::numbers::pi * std::numbers::pi;
  auto n = sobolev_norms(flat, sample(g, [](double x1, double) { return std::cos(kTwoPi * x1); }));
  CHECK(n.l2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(n.h1 == doctest::Approx(std::sqrt(0.5 + 2 * p2)).epsilon(1e-12));
  CHECK(n.h2 == doctest::Approx(std::sqrt(0.5 + 2 * p2 + 8 * p2 * p2)).epsilon(1e-12));
}

TEST_CASE("laplace-beltrami is self-adjoint in L2(dmu)") {
  Grid g = Grid::make(64);
  Surface s = make_surface(g, random_smooth_field(g, 9, 4, 0.7));
  ScalarField f = random_smooth_field(g, 10, 4, 1.0);
  ScalarField h = random_smooth_field(g, 11, 4, 1.0);
  double lhs = integrate(s, hadamard(f, laplace_beltrami(s, h)));
  double rhs = integrate(s, hadamard(h, laplace_beltrami(s, f)));
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("grid mismatch is rejected") {
  Surface s = flat_surface(Grid::make(64));
  ScalarField other(Grid::make(32), 1.0);
  CHECK_THROWS_AS(integrate(s, other), GridMismatchError);
  CHECK_THROWS_AS(laplace_beltrami(s, other), GridMismatchError);
}
