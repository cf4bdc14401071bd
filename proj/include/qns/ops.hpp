#pragma once

#include <string>

#include "qns/grid.hpp"

namespace qns {

enum class DiffBackend { spectral, central2, central4 };

DiffBackend parse_backend(const std::string& name);
std::string backend_name(DiffBackend b);

/// Throws InvalidGrid when the backend cannot run on this grid
/// (spectral requires even n).
void validate_backend(const Grid& g, DiffBackend b);

/// First derivative along one axis.
ScalarField partial(const ScalarField& f, int axis, DiffBackend b);
/// Second derivative along one axis.
ScalarField partial2(const ScalarField& f, int axis, DiffBackend b);

VectorField gradient(const ScalarField& f, DiffBackend b);
ScalarField divergence(const VectorField& v, DiffBackend b);
ScalarField laplacian(const ScalarField& f, DiffBackend b);
VectorField grad_div(const VectorField& v, DiffBackend b);
/// (div T)_i = Σ_j ∂_j T_ij
VectorField div_tensor(const TensorField& t, DiffBackend b);
/// (∇u)_ij = ∂_j u_i
TensorField grad_vec(const VectorField& u, DiffBackend b);
/// Du = (∇u + ∇uᵀ)/2, component-symmetric bit-exactly.
TensorField sym_grad(const VectorField& u, DiffBackend b);
/// Laplacian applied to each component.
VectorField laplacian_vec(const VectorField& v, DiffBackend b);

/// Rectangle-rule quadrature h^dim · Σ values.
double integrate(const ScalarField& f);

}  // namespace qns
