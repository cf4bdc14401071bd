#pragma once

#include <cstddef>

namespace qns::kernels {

// One dispatch table per ISA. The scalar table is the reference; variant
// tables must agree with it elementwise exactly for the pointwise kernels and
// to ~1 ulp for the compensated reductions (checked by the equivalence tests).
struct Ops {
  void (*add)(const double*, const double*, double*, std::size_t);
  void (*sub)(const double*, const double*, double*, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*div)(const double*, const double*, double*, std::size_t);
  void (*scale)(const double*, double, double*, std::size_t);
  void (*axpy)(double, const double*, const double*, double*, std::size_t);
  void (*mul_add)(const double*, const double*, const double*, double*,
                  std::size_t);
  void (*sqrt)(const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*min_val)(const double*, std::size_t);
  void (*central2_d1)(const double*, double*, std::size_t, double);
  void (*central4_d1)(const double*, double*, std::size_t, double);
  void (*central2_d2)(const double*, double*, std::size_t, double);
  void (*central4_d2)(const double*, double*, std::size_t, double);
};

const Ops& scalar_ops();
#if defined(QNS_HAVE_AVX2_BUILD)
const Ops& avx2_ops();
#endif

}  // namespace qns::kernels
