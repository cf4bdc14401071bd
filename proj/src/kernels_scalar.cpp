#include <cmath>
#include <cstddef>

#include "kernels_internal.hpp"

namespace qns::kernels {
namespace {

void s_add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void s_sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void s_mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void s_div(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}

void s_scale(const double* a, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

void s_axpy(double s, const double* x, const double* y, double* out,
            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * x[i] + y[i];
}

void s_mul_add(const double* a, const double* b, const double* c, double* out,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void s_sqrt(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(a[i]);
}

// Neumaier-compensated sum.
double s_sum(const double* a, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s + a[i];
    if (std::abs(s) >= std::abs(a[i]))
      c += (s - t) + a[i];
    else
      c += (a[i] - t) + s;
    s = t;
  }
  return s + c;
}

double s_dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = a[i] * b[i];
    const double t = s + p;
    if (std::abs(s) >= std::abs(p))
      c += (s - t) + p;
    else
      c += (p - t) + s;
    s = t;
  }
  return s + c;
}

double s_max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double s_min_val(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, a[i]);
  return m;
}

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>((i % sn + sn) % sn);
}

void s_central2_d1(const double* f, double* out, std::size_t n, double inv_2h) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i);
    out[i] = (f[wrap(k + 1, n)] - f[wrap(k - 1, n)]) * inv_2h;
  }
}

void s_central4_d1(const double* f, double* out, std::size_t n,
                   double inv_12h) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i);
    out[i] = (-f[wrap(k + 2, n)] + 8.0 * f[wrap(k + 1, n)] -
              8.0 * f[wrap(k - 1, n)] + f[wrap(k - 2, n)]) *
             inv_12h;
  }
}

void s_central2_d2(const double* f, double* out, std::size_t n, double inv_h2) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i);
    out[i] = (f[wrap(k + 1, n)] - 2.0 * f[i] + f[wrap(k - 1, n)]) * inv_h2;
  }
}

void s_central4_d2(const double* f, double* out, std::size_t n,
                   double inv_12h2) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i);
    out[i] = (-f[wrap(k + 2, n)] + 16.0 * f[wrap(k + 1, n)] - 30.0 * f[i] +
              16.0 * f[wrap(k - 1, n)] - f[wrap(k - 2, n)]) *
             inv_12h2;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      s_add,         s_sub,         s_mul,         s_div,
      s_scale,       s_axpy,        s_mul_add,     s_sqrt,
      s_sum,         s_dot,         s_max_abs,     s_min_val,
      s_central2_d1, s_central4_d1, s_central2_d2, s_central4_d2,
  };
  return ops;
}

}  // namespace qns::kernels
