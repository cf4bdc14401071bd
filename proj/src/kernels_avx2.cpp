#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "kernels_internal.hpp"

// AVX2 variants. No FMA contraction anywhere so the pointwise kernels stay
// bit-identical to the scalar reference (both TUs build with
// -ffp-contract=off).

namespace qns::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d x) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(x, mask);
}

void v_add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void v_sub(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void v_mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void v_div(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] / b[i];
}

void v_scale(const double* a, double s, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  for (; i < n; ++i) out[i] = a[i] * s;
}

void v_axpy(double s, const double* x, const double* y, double* out,
            std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p = _mm256_mul_pd(vs, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(p, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = s * x[i] + y[i];
}

void v_mul_add(const double* a, const double* b, const double* c, double* out,
               std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(p, _mm256_loadu_pd(c + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void v_sqrt(const double* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_loadu_pd(a + i)));
  for (; i < n; ++i) out[i] = std::sqrt(a[i]);
}

// Four-lane Neumaier accumulators, combined with a scalar Neumaier pass.
struct Acc {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  inline void push(__m256d v) {
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d big = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
    const __m256d corr_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d corr_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(corr_v, corr_s, big));
    s = t;
  }

  double finish(double tail_s, double tail_c) const {
    double ls[kLanes], lc[kLanes];
    _mm256_storeu_pd(ls, s);
    _mm256_storeu_pd(lc, c);
    double acc = 0.0, corr = tail_c;
    auto fold = [&](double x) {
      const double t = acc + x;
      if (std::abs(acc) >= std::abs(x))
        corr += (acc - t) + x;
      else
        corr += (x - t) + acc;
      acc = t;
    };
    for (double x : ls) fold(x);
    fold(tail_s);
    for (double x : lc) fold(x);
    return acc + corr;
  }
};

double v_sum(const double* a, std::size_t n) {
  Acc acc;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc.push(_mm256_loadu_pd(a + i));
  double ts = 0.0, tc = 0.0;
  for (; i < n; ++i) {
    const double t = ts + a[i];
    if (std::abs(ts) >= std::abs(a[i]))
      tc += (ts - t) + a[i];
    else
      tc += (a[i] - t) + ts;
    ts = t;
  }
  return acc.finish(ts, tc);
}

double v_dot(const double* a, const double* b, std::size_t n) {
  Acc acc;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc.push(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double ts = 0.0, tc = 0.0;
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    const double t = ts + p;
    if (std::abs(ts) >= std::abs(p))
      tc += (ts - t) + p;
    else
      tc += (p - t) + ts;
    ts = t;
  }
  return acc.finish(ts, tc);
}

double v_max_abs(const double* a, std::size_t n) {
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vm = _mm256_max_pd(vm, abs_pd(_mm256_loadu_pd(a + i)));
  double lanes[kLanes];
  _mm256_storeu_pd(lanes, vm);
  double m = 0.0;
  for (double x : lanes) m = std::max(m, x);
  for (; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double v_min_val(const double* a, std::size_t n) {
  double m = a[0];
  std::size_t i = 0;
  if (n >= kLanes) {
    __m256d vm = _mm256_loadu_pd(a);
    for (i = kLanes; i + kLanes <= n; i += kLanes)
      vm = _mm256_min_pd(vm, _mm256_loadu_pd(a + i));
    double lanes[kLanes];
    _mm256_storeu_pd(lanes, vm);
    m = lanes[0];
    for (double x : lanes) m = std::min(m, x);
  } else {
    i = 1;
  }
  for (; i < n; ++i) m = std::min(m, a[i]);
  return m;
}

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>((i % sn + sn) % sn);
}

void v_central2_d1(const double* f, double* out, std::size_t n, double inv_2h) {
  const __m256d vc = _mm256_set1_pd(inv_2h);
  // Interior where i-1 and i+1 stay in range.
  std::size_t i = 1;
  for (; i + kLanes + 1 <= n; i += kLanes) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(f + i + 1), _mm256_loadu_pd(f + i - 1));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vc));
  }
  for (std::size_t k = i; k < n; ++k) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k);
    out[k] = (f[wrap(j + 1, n)] - f[wrap(j - 1, n)]) * inv_2h;
  }
  out[0] = (f[1] - f[n - 1]) * inv_2h;
}

void v_central4_d1(const double* f, double* out, std::size_t n,
                   double inv_12h) {
  const __m256d vc = _mm256_set1_pd(inv_12h);
  const __m256d v8 = _mm256_set1_pd(8.0);
  std::size_t i = 2;
  for (; i + kLanes + 2 <= n; i += kLanes) {
    const __m256d fp2 = _mm256_loadu_pd(f + i + 2);
    const __m256d fp1 = _mm256_loadu_pd(f + i + 1);
    const __m256d fm1 = _mm256_loadu_pd(f + i - 1);
    const __m256d fm2 = _mm256_loadu_pd(f + i - 2);
    const __m256d inner = _mm256_mul_pd(v8, _mm256_sub_pd(fp1, fm1));
    const __m256d d =
        _mm256_add_pd(_mm256_sub_pd(inner, fp2), fm2);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vc));
  }
  for (std::size_t k = i; k < n; ++k) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k);
    out[k] = (-f[wrap(j + 2, n)] + 8.0 * f[wrap(j + 1, n)] -
              8.0 * f[wrap(j - 1, n)] + f[wrap(j - 2, n)]) *
             inv_12h;
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k);
    out[k] = (-f[wrap(j + 2, n)] + 8.0 * f[wrap(j + 1, n)] -
              8.0 * f[wrap(j - 1, n)] + f[wrap(j - 2, n)]) *
             inv_12h;
  }
}

void v_central2_d2(const double* f, double* out, std::size_t n, double inv_h2) {
  const __m256d vc = _mm256_set1_pd(inv_h2);
  const __m256d v2 = _mm256_set1_pd(2.0);
  std::size_t i = 1;
  for (; i + kLanes + 1 <= n; i += kLanes) {
    const __m256d fp1 = _mm256_loadu_pd(f + i + 1);
    const __m256d f0 = _mm256_loadu_pd(f + i);
    const __m256d fm1 = _mm256_loadu_pd(f + i - 1);
    const __m256d d =
        _mm256_add_pd(_mm256_sub_pd(fp1, _mm256_mul_pd(v2, f0)), fm1);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vc));
  }
  for (std::size_t k = i; k < n; ++k) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k);
    out[k] = (f[wrap(j + 1, n)] - 2.0 * f[k] + f[wrap(j - 1, n)]) * inv_h2;
  }
  out[0] = (f[1] - 2.0 * f[0] + f[n - 1]) * inv_h2;
}

void v_central4_d2(const double* f, double* out, std::size_t n,
                   double inv_12h2) {
  const __m256d vc = _mm256_set1_pd(inv_12h2);
  const __m256d v16 = _mm256_set1_pd(16.0);
  const __m256d v30 = _mm256_set1_pd(30.0);
  std::size_t i = 2;
  for (; i + kLanes + 2 <= n; i += kLanes) {
    const __m256d fp2 = _mm256_loadu_pd(f + i + 2);
    const __m256d fp1 = _mm256_loadu_pd(f + i + 1);
    const __m256d f0 = _mm256_loadu_pd(f + i);
    const __m256d fm1 = _mm256_loadu_pd(f + i - 1);
    const __m256d fm2 = _mm256_loadu_pd(f + i - 2);
    __m256d d = _mm256_mul_pd(v16, _mm256_add_pd(fp1, fm1));
    d = _mm256_sub_pd(d, _mm256_mul_pd(v30, f0));
    d = _mm256_sub_pd(d, fp2);
    d = _mm256_sub_pd(d, fm2);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vc));
  }
  auto edge = [&](std::size_t k) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k);
    out[k] = (-f[wrap(j + 2, n)] + 16.0 * f[wrap(j + 1, n)] - 30.0 * f[k] +
              16.0 * f[wrap(j - 1, n)] - f[wrap(j - 2, n)]) *
             inv_12h2;
  };
  for (std::size_t k = i; k < n; ++k) edge(k);
  edge(0);
  edge(1);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{
      v_add,         v_sub,         v_mul,         v_div,
      v_scale,       v_axpy,        v_mul_add,     v_sqrt,
      v_sum,         v_dot,         v_max_abs,     v_min_val,
      v_central2_d1, v_central4_d1, v_central2_d2, v_central4_d2,
  };
  return ops;
}

}  // namespace qns::kernels
