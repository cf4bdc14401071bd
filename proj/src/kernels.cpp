#include "qns/kernels.hpp"

#include <atomic>

#include "kernels_internal.hpp"
#include "qns/errors.hpp"

namespace qns::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(QNS_HAVE_AVX2_BUILD) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Ops* table_for(Isa isa) {
#if defined(QNS_HAVE_AVX2_BUILD)
  if (isa == Isa::avx2) return &avx2_ops();
#endif
  (void)isa;
  return &scalar_ops();
}

std::atomic<const Ops*> g_ops{nullptr};
std::atomic<Isa> g_isa{Isa::scalar};

const Ops& ops() {
  const Ops* p = g_ops.load(std::memory_order_acquire);
  if (!p) {
    const Isa isa = detect();
    p = table_for(isa);
    g_isa.store(isa, std::memory_order_relaxed);
    g_ops.store(p, std::memory_order_release);
  }
  return *p;
}

}  // namespace

Isa detect() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active() {
  ops();
  return g_isa.load(std::memory_order_relaxed);
}

bool supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  return cpu_has_avx2();
}

void set_active(Isa isa) {
  if (!supported(isa)) throw Error("kernel ISA not supported: " + isa_name(isa));
  g_isa.store(isa, std::memory_order_relaxed);
  g_ops.store(table_for(isa), std::memory_order_release);
}

std::string isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  ops().add(a, b, out, n);
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  ops().sub(a, b, out, n);
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  ops().mul(a, b, out, n);
}
void div(const double* a, const double* b, double* out, std::size_t n) {
  ops().div(a, b, out, n);
}
void scale(const double* a, double s, double* out, std::size_t n) {
  ops().scale(a, s, out, n);
}
void axpy(double s, const double* x, const double* y, double* out,
          std::size_t n) {
  ops().axpy(s, x, y, out, n);
}
void mul_add(const double* a, const double* b, const double* c, double* out,
             std::size_t n) {
  ops().mul_add(a, b, c, out, n);
}
void sqrt(const double* a, double* out, std::size_t n) {
  ops().sqrt(a, out, n);
}
double sum(const double* a, std::size_t n) { return ops().sum(a, n); }
double dot(const double* a, const double* b, std::size_t n) {
  return ops().dot(a, b, n);
}
double max_abs(const double* a, std::size_t n) { return ops().max_abs(a, n); }
double min_val(const double* a, std::size_t n) { return ops().min_val(a, n); }
void central2_d1(const double* f, double* out, std::size_t n, double c) {
  ops().central2_d1(f, out, n, c);
}
void central4_d1(const double* f, double* out, std::size_t n, double c) {
  ops().central4_d1(f, out, n, c);
}
void central2_d2(const double* f, double* out, std::size_t n, double c) {
  ops().central2_d2(f, out, n, c);
}
void central4_d2(const double* f, double* out, std::size_t n, double c) {
  ops().central4_d2(f, out, n, c);
}

}  // namespace qns::kernels
