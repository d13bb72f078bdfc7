#include "kwflow/field.hpp"

#include <cmath>
#include <string>

namespace kwflow {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid Grid::make(int n) {
  if (n < 16 || !is_power_of_two(n))
    throw Error("grid size must be a power of two >= 16, got " + std::to_string(n));
  return Grid{n, 1.0 / n};
}

bool ScalarField::all_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

double ScalarField::max() const {
  double m = v_[0];
  for (double x : v_) m = std::fmax(m, x);
  return m;
}

double ScalarField::min() const {
  double m = v_[0];
  for (double x : v_) m = std::fmin(m, x);
  return m;
}

double ScalarField::sum() const {
  double s = 0;
  for (double x : v_) s += x;
  return s;
}

std::array<int, 2> ScalarField::argmax() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v_.size(); ++k)
    if (v_[k] > v_[best]) best = k;
  int n = grid_.n;
  return {static_cast<int>(best) / n, static_cast<int>(best) % n};
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double c) {
  for (double& x : v_) x += c;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  ScalarField out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= b[k];
  return out;
}

ScalarField sample(Grid g, const std::function<double(double, double)>& f) {
  ScalarField out(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) out(i, j) = f(i * g.dx, j * g.dx);
  return out;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatchError("fields live on different grids");
}

void require_finite(const ScalarField& f, const char* what) {
  if (!f.all_finite()) throw InvalidFieldError(std::string(what) + " contains NaN/Inf");
}

double torus_delta(double a, double b) {
  double d = b - a;
  d -= std::floor(d + 0.5);
  return d;
}

double torus_distance(std::array<double, 2> a, std::array<double, 2> b) {
  double d1 = torus_delta(a[0], b[0]);
  double d2 = torus_delta(a[1], b[1]);
  return std::sqrt(d1 * d1 + d2 * d2);
}

namespace {
// Catmull-Rom weight for the four-point stencil, t in [0,1].
inline void cubic_weights(double t, double w[4]) {
  double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2 * t2 - t);
  w[1] = 0.5 * (3 * t3 - 5 * t2 + 2);
  w[2] = 0.5 * (-3 * t3 + 4 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}
}  // namespace

double interpolate_bicubic(const ScalarField& f, double x1, double x2) {
  int n = f.n();
  double g1 = x1 * n, g2 = x2 * n;
  int i0 = static_cast<int>(std::floor(g1));
  int j0 = static_cast<int>(std::floor(g2));
  double t1 = g1 - i0, t2 = g2 - j0;
  double w1[4], w2[4];
  cubic_weights(t1, w1);
  cubic_weights(t2, w2);
  double acc = 0;
  for (int a = -1; a <= 2; ++a) {
    int i = ((i0 + a) % n + n) % n;
    double row = 0;
    for (int b = -1; b <= 2; ++b) {
      int j = ((j0 + b) % n + n) % n;
      row += w2[b + 1] * f(i, j);
    }
    acc += w1[a + 1] * row;
  }
  return acc;
}

}  // namespace kwflow
