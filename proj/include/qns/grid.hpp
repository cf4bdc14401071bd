#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qns/errors.hpp"
#include "qns/kernels.hpp"

namespace qns {

/// Cubic periodic torus: `dim` axes, `n` points and period `length` per axis.
struct Grid {
  int dim = 1;
  int n = 8;
  double length = 6.283185307179586476925286766559;

  double spacing() const { return length / n; }
  std::size_t cells() const {
    std::size_t c = 1;
    for (int d = 0; d < dim; ++d) c *= static_cast<std::size_t>(n);
    return c;
  }
  bool operator==(const Grid&) const = default;
};

/// Validated constructor; `spectral` adds the even-n parity requirement.
Grid make_grid(int dim, int n, double length);

struct ScalarField {
  Grid grid;
  std::vector<double> v;  // row-major, axis 0 slowest

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), v(g.cells(), fill) {}

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  double* data() { return v.data(); }
  const double* data() const { return v.data(); }
};

struct VectorField {
  Grid grid;
  std::vector<ScalarField> comp;  // dim components

  VectorField() = default;
  explicit VectorField(const Grid& g)
      : grid(g), comp(static_cast<std::size_t>(g.dim), ScalarField(g)) {}
};

struct TensorField {
  Grid grid;
  std::vector<ScalarField> comp;  // dim*dim, row-major (i*dim + j)

  TensorField() = default;
  explicit TensorField(const Grid& g)
      : grid(g),
        comp(static_cast<std::size_t>(g.dim) * g.dim, ScalarField(g)) {}

  ScalarField& at(int i, int j) { return comp[static_cast<std::size_t>(i) * grid.dim + j]; }
  const ScalarField& at(int i, int j) const {
    return comp[static_cast<std::size_t>(i) * grid.dim + j];
  }
};

// Field arithmetic (fresh-output, kernel-backed).
ScalarField add(const ScalarField& a, const ScalarField& b);
ScalarField sub(const ScalarField& a, const ScalarField& b);
ScalarField mul(const ScalarField& a, const ScalarField& b);
ScalarField div(const ScalarField& a, const ScalarField& b);
ScalarField scale(const ScalarField& a, double s);
ScalarField sqrt(const ScalarField& a);
/// out = s*x + y
ScalarField axpy(double s, const ScalarField& x, const ScalarField& y);
void add_inplace(ScalarField& a, const ScalarField& b);
void axpy_inplace(double s, const ScalarField& x, ScalarField& y);

double min_value(const ScalarField& a);
double max_abs(const ScalarField& a);
bool all_finite(const ScalarField& a);

VectorField scale(const VectorField& a, double s);
VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
/// componentwise a_i * s (scalar field)
VectorField mul(const VectorField& a, const ScalarField& s);
VectorField div(const VectorField& a, const ScalarField& s);
double max_abs(const VectorField& a);
/// pointwise |v|^2
ScalarField norm_sq(const VectorField& a);
/// outer product (a ⊗ b)_ij = a_i b_j
TensorField outer(const VectorField& a, const VectorField& b);
/// pointwise Frobenius square Σ_ij T_ij^2
ScalarField frobenius_sq(const TensorField& t);
TensorField mul(const TensorField& t, const ScalarField& s);
TensorField sub(const TensorField& a, const TensorField& b);
double max_abs(const TensorField& t);

/// Sample fn(x) at every grid point, x = {x0, x1, x2} with x_a = index_a * h
/// (unused trailing coordinates are zero).
template <class F>
ScalarField sample(const Grid& g, F&& fn) {
  ScalarField out(g);
  const double h = g.spacing();
  const std::size_t total = g.cells();
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (int d = g.dim - 1; d >= 0; --d) {
      x[static_cast<std::size_t>(d)] =
          static_cast<double>(rem % static_cast<std::size_t>(g.n)) * h;
      rem /= static_cast<std::size_t>(g.n);
    }
    out[i] = fn(x);
  }
  return out;
}

/// Pointwise map f(v_i) -> out_i.
template <class F>
ScalarField map(const ScalarField& a, F&& fn) {
  ScalarField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = fn(a[i]);
  return out;
}

}  // namespace qns
