#include "qns/grid.hpp"

#include <cmath>
#include <string>

namespace qns {

Grid make_grid(int dim, int n, double length) {
  if (dim < 1 || dim > 3)
    throw InvalidGrid("dim must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  if (n < 8)
    throw InvalidGrid("n must be >= 8 (got " + std::to_string(n) + ")");
  if (!(length > 0.0))
    throw InvalidGrid("length must be > 0 (got " + std::to_string(length) + ")");
  return Grid{dim, n, length};
}

namespace {

ScalarField fresh_like(const ScalarField& a) { return ScalarField(a.grid); }

void check_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw InvalidGrid("field grids differ");
}

}  // namespace

ScalarField add(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid, b.grid);
  ScalarField out = fresh_like(a);
  kernels::add(a.data(), b.data(), out.data(), a.size());
  return out;
}

ScalarField sub(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid, b.grid);
  ScalarField out = fresh_like(a);
  kernels::sub(a.data(), b.data(), out.data(), a.size());
  return out;
}

ScalarField mul(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid, b.grid);
  ScalarField out = fresh_like(a);
  kernels::mul(a.data(), b.data(), out.data(), a.size());
  return out;
}

ScalarField div(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid, b.grid);
  ScalarField out = fresh_like(a);
  kernels::div(a.data(), b.data(), out.data(), a.size());
  return out;
}

ScalarField scale(const ScalarField& a, double s) {
  ScalarField out = fresh_like(a);
  kernels::scale(a.data(), s, out.data(), a.size());
  return out;
}

ScalarField sqrt(const ScalarField& a) {
  ScalarField out = fresh_like(a);
  kernels::sqrt(a.data(), out.data(), a.size());
  return out;
}

ScalarField axpy(double s, const ScalarField& x, const ScalarField& y) {
  check_same_grid(x.grid, y.grid);
  ScalarField out = fresh_like(x);
  kernels::axpy(s, x.data(), y.data(), out.data(), x.size());
  return out;
}

void add_inplace(ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid, b.grid);
  kernels::add(a.data(), b.data(), a.data(), a.size());
}

void axpy_inplace(double s, const ScalarField& x, ScalarField& y) {
  check_same_grid(x.grid, y.grid);
  kernels::axpy(s, x.data(), y.data(), y.data(), x.size());
}

double min_value(const ScalarField& a) {
  return kernels::min_val(a.data(), a.size());
}

double max_abs(const ScalarField& a) {
  return kernels::max_abs(a.data(), a.size());
}

bool all_finite(const ScalarField& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

VectorField scale(const VectorField& a, double s) {
  VectorField out(a.grid);
  for (int d = 0; d < a.grid.dim; ++d) out.comp[d] = scale(a.comp[d], s);
  return out;
}

VectorField add(const VectorField& a, const VectorField& b) {
  VectorField out(a.grid);
  for (int d = 0; d < a.grid.dim; ++d) out.comp[d] = add(a.comp[d], b.comp[d]);
  return out;
}

VectorField sub(const VectorField& a, const VectorField& b) {
  VectorField out(a.grid);
  for (int d = 0; d < a.grid.dim; ++d) out.comp[d] = sub(a.comp[d], b.comp[d]);
  return out;
}

VectorField mul(const VectorField& a, const ScalarField& s) {
  VectorField out(a.grid);
  for (int d = 0; d < a.grid.dim; ++d) out.comp[d] = mul(a.comp[d], s);
  return out;
}

VectorField div(const VectorField& a, const ScalarField& s) {
  VectorField out(a.grid);
  for (int d = 0; d < a.grid.dim; ++d) out.comp[d] = div(a.comp[d], s);
  return out;
}

double max_abs(const VectorField& a) {
  double m = 0.0;
  for (const auto& c : a.comp) m = std::max(m, max_abs(c));
  return m;
}

ScalarField norm_sq(const VectorField& a) {
  ScalarField out(a.grid);
  for (int d = 0; d < a.grid.dim; ++d) {
    const ScalarField& c = a.comp[d];
    kernels::mul_add(c.data(), c.data(), out.data(), out.data(), out.size());
  }
  return out;
}

TensorField outer(const VectorField& a, const VectorField& b) {
  check_same_grid(a.grid, b.grid);
  TensorField out(a.grid);
  for (int i = 0; i < a.grid.dim; ++i)
    for (int j = 0; j < a.grid.dim; ++j)
      out.at(i, j) = mul(a.comp[i], b.comp[j]);
  return out;
}

ScalarField frobenius_sq(const TensorField& t) {
  ScalarField out(t.grid);
  for (const auto& c : t.comp)
    kernels::mul_add(c.data(), c.data(), out.data(), out.data(), out.size());
  return out;
}

TensorField mul(const TensorField& t, const ScalarField& s) {
  TensorField out(t.grid);
  for (std::size_t k = 0; k < t.comp.size(); ++k) out.comp[k] = mul(t.comp[k], s);
  return out;
}

TensorField sub(const TensorField& a, const TensorField& b) {
  TensorField out(a.grid);
  for (std::size_t k = 0; k < a.comp.size(); ++k)
    out.comp[k] = sub(a.comp[k], b.comp[k]);
  return out;
}

double max_abs(const TensorField& t) {
  double m = 0.0;
  for (const auto& c : t.comp) m = std::max(m, max_abs(c));
  return m;
}

}  // namespace qns
