#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops behind the field containers. Every kernel has a
// scalar reference implementation and (on x86-64) an AVX2 variant; the active
// set is chosen once at runtime and can be forced for equivalence testing.
//
// Reductions (sum, dot) are compensated (Neumaier) in both variants so the
// quadrature error stays near one ulp regardless of lane count.

namespace qns::kernels {

enum class Isa { scalar, avx2 };

/// Best ISA supported by this build and CPU.
Isa detect();

/// Currently active ISA.
Isa active();

/// True if `isa` is usable on this build and CPU.
bool supported(Isa isa);

/// Force the active ISA (throws qns::Error if unsupported).
void set_active(Isa isa);

std::string isa_name(Isa isa);

// Elementwise, out may alias inputs.
void add(const double* a, const double* b, double* out, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void div(const double* a, const double* b, double* out, std::size_t n);
void scale(const double* a, double s, double* out, std::size_t n);
/// out = s*x + y
void axpy(double s, const double* x, const double* y, double* out,
          std::size_t n);
/// out = a*b + c
void mul_add(const double* a, const double* b, const double* c, double* out,
             std::size_t n);
void sqrt(const double* a, double* out, std::size_t n);

// Reductions.
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min_val(const double* a, std::size_t n);

// Periodic centered stencils on one contiguous pencil of length n (n >= 5).
// d1 = first derivative, d2 = second derivative; the caller passes the
// precomputed coefficient (1/2h, 1/12h, 1/h^2, 1/12h^2 respectively).
void central2_d1(const double* f, double* out, std::size_t n, double inv_2h);
void central4_d1(const double* f, double* out, std::size_t n, double inv_12h);
void central2_d2(const double* f, double* out, std::size_t n, double inv_h2);
void central4_d2(const double* f, double* out, std::size_t n, double inv_12h2);

}  // namespace qns::kernels
