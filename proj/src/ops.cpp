#include "qns/ops.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace qns {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// ---------------------------------------------------------------------------
// Spectral backend: full-rank complex transforms with a shared plan cache.
// Plans are created once per (dim, n) under a mutex; execution uses the
// new-array interface on caller-owned buffers (plans carry FFTW_UNALIGNED).
// ---------------------------------------------------------------------------

struct SpectralPlans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

const SpectralPlans& plans_for(const Grid& g) {
  static std::map<std::pair<int, int>, SpectralPlans> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(g.dim, g.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const std::size_t total = g.cells();
  std::vector<std::complex<double>> scratch_in(total), scratch_out(total);
  int dims[3] = {g.n, g.n, g.n};
  SpectralPlans p;
  p.fwd = fftw_plan_dft(g.dim, dims,
                        reinterpret_cast<fftw_complex*>(scratch_in.data()),
                        reinterpret_cast<fftw_complex*>(scratch_out.data()),
                        FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft(g.dim, dims,
                        reinterpret_cast<fftw_complex*>(scratch_in.data()),
                        reinterpret_cast<fftw_complex*>(scratch_out.data()),
                        FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(key, p).first->second;
}

/// Integer frequency of flattened index along `axis`: j -> j or j-n.
inline int kfreq(int j, int n) { return (j <= n / 2) ? j : j - n; }

/// Apply a per-mode multiplier in Fourier space. `mult` receives the integer
/// frequency vector and returns the complex factor.
template <class Mult>
ScalarField spectral_apply(const ScalarField& f, Mult&& mult) {
  const Grid& g = f.grid;
  const std::size_t total = g.cells();
  const SpectralPlans& p = plans_for(g);

  std::vector<std::complex<double>> buf(total), spec(total);
  for (std::size_t i = 0; i < total; ++i) buf[i] = f[i];
  fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(spec.data()));

  const int n = g.n;
  int kk[3] = {0, 0, 0};
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (int d = g.dim - 1; d >= 0; --d) {
      kk[d] = kfreq(static_cast<int>(rem % static_cast<std::size_t>(n)), n);
      rem /= static_cast<std::size_t>(n);
    }
    spec[i] *= mult(kk);
  }

  fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(spec.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));
  ScalarField out(g);
  const double inv_total = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = buf[i].real() * inv_total;
  return out;
}

ScalarField spectral_partial(const ScalarField& f, int axis) {
  const double k0 = kTwoPi / f.grid.length;
  const int nyq = f.grid.n / 2;
  return spectral_apply(f, [axis, k0, nyq](const int* kk) {
    // Nyquist mode has no well-defined odd derivative; drop it.
    const int kj = kk[axis];
    const double k = (kj == nyq || kj == -nyq) ? 0.0 : k0 * kj;
    return std::complex<double>(0.0, k);
  });
}

ScalarField spectral_partial2(const ScalarField& f, int axis) {
  const double k0 = kTwoPi / f.grid.length;
  return spectral_apply(f, [axis, k0](const int* kk) {
    const double k = k0 * kk[axis];
    return std::complex<double>(-k * k, 0.0);
  });
}

ScalarField spectral_laplacian(const ScalarField& f) {
  const double k0 = kTwoPi / f.grid.length;
  const int dim = f.grid.dim;
  return spectral_apply(f, [dim, k0](const int* kk) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double k = k0 * kk[d];
      s += k * k;
    }
    return std::complex<double>(-s, 0.0);
  });
}

// ---------------------------------------------------------------------------
// Finite-difference backends: gather each grid line into a contiguous pencil,
// run the stencil kernel, scatter back.
// ---------------------------------------------------------------------------

template <class Kernel>
ScalarField stencil_axis(const ScalarField& f, int axis, Kernel&& kern,
                         double coeff) {
  const Grid& g = f.grid;
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::size_t stride = 1;
  for (int d = g.dim - 1; d > axis; --d) stride *= n;
  const std::size_t block = stride * n;
  const std::size_t total = g.cells();

  ScalarField out(g);
  std::vector<double> pencil(n), dpencil(n);
  for (std::size_t base0 = 0; base0 < total; base0 += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = base0 + inner;
      if (stride == 1) {
        kern(f.data() + base, out.data() + base, n, coeff);
      } else {
        for (std::size_t t = 0; t < n; ++t) pencil[t] = f[base + t * stride];
        kern(pencil.data(), dpencil.data(), n, coeff);
        for (std::size_t t = 0; t < n; ++t) out[base + t * stride] = dpencil[t];
      }
    }
  }
  return out;
}

}  // namespace

DiffBackend parse_backend(const std::string& name) {
  if (name == "spectral") return DiffBackend::spectral;
  if (name == "central2") return DiffBackend::central2;
  if (name == "central4") return DiffBackend::central4;
  throw InvalidGrid("unknown backend: " + name);
}

std::string backend_name(DiffBackend b) {
  switch (b) {
    case DiffBackend::spectral: return "spectral";
    case DiffBackend::central2: return "central2";
    case DiffBackend::central4: return "central4";
  }
  return "unknown";
}

void validate_backend(const Grid& g, DiffBackend b) {
  if (b == DiffBackend::spectral && g.n % 2 != 0)
    throw InvalidGrid("spectral backend requires even n (got " +
                      std::to_string(g.n) + ")");
}

ScalarField partial(const ScalarField& f, int axis, DiffBackend b) {
  const double h = f.grid.spacing();
  switch (b) {
    case DiffBackend::spectral:
      validate_backend(f.grid, b);
      return spectral_partial(f, axis);
    case DiffBackend::central2:
      return stencil_axis(f, axis, kernels::central2_d1, 1.0 / (2.0 * h));
    case DiffBackend::central4:
      return stencil_axis(f, axis, kernels::central4_d1, 1.0 / (12.0 * h));
  }
  throw InvalidGrid("bad backend");
}

ScalarField partial2(const ScalarField& f, int axis, DiffBackend b) {
  const double h = f.grid.spacing();
  switch (b) {
    case DiffBackend::spectral:
      validate_backend(f.grid, b);
      return spectral_partial2(f, axis);
    case DiffBackend::central2:
      return stencil_axis(f, axis, kernels::central2_d2, 1.0 / (h * h));
    case DiffBackend::central4:
      return stencil_axis(f, axis, kernels::central4_d2, 1.0 / (12.0 * h * h));
  }
  throw InvalidGrid("bad backend");
}

VectorField gradient(const ScalarField& f, DiffBackend b) {
  VectorField out(f.grid);
  for (int d = 0; d < f.grid.dim; ++d) out.comp[d] = partial(f, d, b);
  return out;
}

ScalarField divergence(const VectorField& v, DiffBackend b) {
  ScalarField out(v.grid);
  for (int d = 0; d < v.grid.dim; ++d) add_inplace(out, partial(v.comp[d], d, b));
  return out;
}

ScalarField laplacian(const ScalarField& f, DiffBackend b) {
  if (b == DiffBackend::spectral) {
    validate_backend(f.grid, b);
    return spectral_laplacian(f);
  }
  ScalarField out(f.grid);
  for (int d = 0; d < f.grid.dim; ++d) add_inplace(out, partial2(f, d, b));
  return out;
}

VectorField grad_div(const VectorField& v, DiffBackend b) {
  return gradient(divergence(v, b), b);
}

VectorField div_tensor(const TensorField& t, DiffBackend b) {
  VectorField out(t.grid);
  for (int i = 0; i < t.grid.dim; ++i) {
    ScalarField acc(t.grid);
    for (int j = 0; j < t.grid.dim; ++j)
      add_inplace(acc, partial(t.at(i, j), j, b));
    out.comp[i] = std::move(acc);
  }
  return out;
}

TensorField grad_vec(const VectorField& u, DiffBackend b) {
  TensorField out(u.grid);
  for (int i = 0; i < u.grid.dim; ++i)
    for (int j = 0; j < u.grid.dim; ++j)
      out.at(i, j) = partial(u.comp[i], j, b);
  return out;
}

TensorField sym_grad(const VectorField& u, DiffBackend b) {
  const TensorField grad = grad_vec(u, b);
  TensorField out(u.grid);
  // Mirror the upper triangle so T_ij == T_ji bit-exactly.
  for (int i = 0; i < u.grid.dim; ++i) {
    for (int j = i; j < u.grid.dim; ++j) {
      ScalarField s = scale(add(grad.at(i, j), grad.at(j, i)), 0.5);
      out.at(j, i) = s;
      out.at(i, j) = std::move(s);
    }
  }
  return out;
}

VectorField laplacian_vec(const VectorField& v, DiffBackend b) {
  VectorField out(v.grid);
  for (int d = 0; d < v.grid.dim; ++d) out.comp[d] = laplacian(v.comp[d], b);
  return out;
}

double integrate(const ScalarField& f) {
  double hpow = 1.0;
  const double h = f.grid.spacing();
  for (int d = 0; d < f.grid.dim; ++d) hpow *= h;
  return hpow * kernels::sum(f.data(), f.size());
}

}  // namespace qns
