#include "kwflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace kwflow::spectral {

namespace {

struct Plans {
  int n;
  fftw_plan fwd;  // r2c
  fftw_plan bwd;  // c2r
};

// Plans are created once per grid size with FFTW_ESTIMATE (deterministic) and
// executed on per-call buffers via the new-array interface.
const Plans& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  double* re = fftw_alloc_real(static_cast<std::size_t>(n) * n);
  fftw_complex* co = fftw_alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1));
  Plans p;
  p.n = n;
  p.fwd = fftw_plan_dft_r2c_2d(n, n, re, co, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_c2r_2d(n, n, co, re, FFTW_ESTIMATE);
  fftw_free(re);
  fftw_free(co);
  return cache.emplace(n, p).first->second;
}

struct FftwRealDeleter {
  void operator()(double* p) const { fftw_free(p); }
};
struct FftwComplexDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

using RealBuf = std::unique_ptr<double[], FftwRealDeleter>;
using ComplexBuf = std::unique_ptr<fftw_complex[], FftwComplexDeleter>;

ComplexBuf forward(const ScalarField& f) {
  int n = f.n();
  const Plans& p = plans_for(n);
  RealBuf re(fftw_alloc_real(f.size()));
  ComplexBuf co(fftw_alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1)));
  std::copy(f.data(), f.data() + f.size(), re.get());
  fftw_execute_dft_r2c(p.fwd, re.get(), co.get());
  return co;
}

ScalarField backward(Grid g, ComplexBuf co) {
  int n = g.n;
  const Plans& p = plans_for(n);
  RealBuf re(fftw_alloc_real(static_cast<std::size_t>(n) * n));
  fftw_execute_dft_c2r(p.bwd, co.get(), re.get());
  ScalarField out(g);
  double scale = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = re[k] * scale;
  return out;
}

inline int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

template <class Mult>
ScalarField apply_real_multiplier(const ScalarField& f, Mult mult) {
  int n = f.n();
  ComplexBuf co = forward(f);
  int nc = n / 2 + 1;
  for (int i = 0; i < n; ++i) {
    int k1 = wavenumber(i, n);
    for (int j = 0; j < nc; ++j) {
      double m = mult(k1, j);
      co[static_cast<std::size_t>(i) * nc + j][0] *= m;
      co[static_cast<std::size_t>(i) * nc + j][1] *= m;
    }
  }
  return backward(f.grid(), std::move(co));
}

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double four_pi_sq = two_pi * two_pi;

}  // namespace

ScalarField laplacian(const ScalarField& f) {
  return apply_real_multiplier(f, [](int k1, int k2) {
    return -four_pi_sq * (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
  });
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
  int n = f.n();
  int nc = n / 2 + 1;
  ComplexBuf c1 = forward(f);
  ComplexBuf c2(fftw_alloc_complex(static_cast<std::size_t>(n) * nc));
  for (int i = 0; i < n; ++i) {
    int k1 = wavenumber(i, n);
    for (int j = 0; j < nc; ++j) {
      std::size_t idx = static_cast<std::size_t>(i) * nc + j;
      double re = c1[idx][0], im = c1[idx][1];
      // The asymmetric Nyquist mode carries no usable first derivative.
      double w1 = (i == n / 2) ? 0.0 : two_pi * k1;
      double w2 = (j == n / 2) ? 0.0 : two_pi * j;
      c1[idx][0] = -im * w1;
      c1[idx][1] = re * w1;
      c2[idx][0] = -im * w2;
      c2[idx][1] = re * w2;
    }
  }
  ScalarField d1 = backward(f.grid(), std::move(c1));
  ScalarField d2 = backward(f.grid(), std::move(c2));
  return {std::move(d1), std::move(d2)};
}

ScalarField poisson_inverse(const ScalarField& f) {
  return apply_real_multiplier(f, [](int k1, int k2) {
    double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return kk == 0 ? 0.0 : 1.0 / (four_pi_sq * kk);
  });
}

ScalarField helmholtz_inverse(double alpha, const ScalarField& f) {
  return apply_real_multiplier(f, [alpha](int k1, int k2) {
    double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return 1.0 / (alpha + four_pi_sq * kk);
  });
}

}  // namespace kwflow::spectral
