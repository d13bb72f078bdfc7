#ifndef KWFLOW_FIELD_HPP
#define KWFLOW_FIELD_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "kwflow/errors.hpp"

namespace kwflow {

/** Uniform periodic grid on the unit square torus [0,1)^2. */
struct Grid {
  int n = 0;     ///< points per side, power of two >= 16
  double dx = 0; ///< spacing, dx * n == 1

  static Grid make(int n);

  bool operator==(const Grid&) const = default;
};

/** Real function sampled at the nodes (i*dx, j*dx), row-major in i. */
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(Grid g, double fill = 0.0)
      : grid_(g), v_(static_cast<std::size_t>(g.n) * g.n, fill) {}

  const Grid& grid() const { return grid_; }
  int n() const { return grid_.n; }
  std::size_t size() const { return v_.size(); }

  double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * grid_.n + j]; }
  double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * grid_.n + j]; }
  double& operator[](std::size_t k) { return v_[k]; }
  double operator[](std::size_t k) const { return v_[k]; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  bool all_finite() const;
  double max() const;
  double min() const;
  /** Plain sum of all node values in a fixed deterministic order. */
  double sum() const;

  /** Node of the largest value, first in row-major order on ties. */
  std::array<int, 2> argmax() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double c);

 private:
  Grid grid_;
  std::vector<double> v_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/** Pointwise product. */
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

/** Sample f(x1, x2) at the grid nodes. */
ScalarField sample(Grid g, const std::function<double(double, double)>& f);

void require_same_grid(const ScalarField& a, const ScalarField& b);
void require_finite(const ScalarField& f, const char* what);

/** Signed minimal-image displacement of b-a on the unit torus, in [-1/2, 1/2). */
double torus_delta(double a, double b);

/** Flat minimal-image distance between two points of the unit torus. */
double torus_distance(std::array<double, 2> a, std::array<double, 2> b);

/** Periodic bicubic (Catmull-Rom) interpolation of f at an off-grid point. */
double interpolate_bicubic(const ScalarField& f, double x1, double x2);

}  // namespace kwflow

#endif
