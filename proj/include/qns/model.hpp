#pragma once

#include <string>

#include "qns/grid.hpp"
#include "qns/ops.hpp"

namespace qns {

/// Densities below this are treated as vacuum; crossing it is an error, never
/// something to clip, since clipping would corrupt every balance diagnostic.
inline constexpr double kDensityFloor = 1e-8;

struct PhysParams {
  double nu = 0.1;     ///< viscosity, > 0
  double kappa = 0.05; ///< dispersive coefficient, >= 0
  double gamma = 2.0;  ///< adiabatic exponent, > 1
};

void validate(const PhysParams& p);

/// Conserved variables: density rho and momentum rho*u. The velocity is
/// always derived, never stored.
struct FluidState {
  Grid grid;
  ScalarField rho;
  VectorField mom;

  FluidState() = default;
  explicit FluidState(const Grid& g) : grid(g), rho(g), mom(g) {}
};

/// Discrete realizations of the dispersive (Bohm) term 2ρ∇(Δ√ρ/√ρ).
enum class BohmForm {
  pressure_form,     ///< 2ρ∇(Δ√ρ/√ρ)
  log_hessian_form,  ///< div(ρ∇²log ρ)
  wave_form,         ///< ∇Δρ − 4 div(∇√ρ⊗∇√ρ)
};

BohmForm parse_bohm_form(const std::string& name);
std::string bohm_form_name(BohmForm f);

/// u = mom/rho; throws VacuumReached if min(rho) < floor.
VectorField velocity(const FluidState& s, double floor = kDensityFloor);

/// Throws VacuumReached when min(rho) < floor.
void check_floor(const ScalarField& rho, double floor, double t = 0.0);

/// ∇log ρ computed as 2∇√ρ/√ρ (the energy-space primitive).
VectorField grad_log_density(const ScalarField& rho, DiffBackend b,
                             double floor = kDensityFloor);

/// Pointwise ρ^γ.
ScalarField pressure_field(const ScalarField& rho, double gamma);

/// The selected realization of 2ρ∇(Δ√ρ/√ρ). The division-bearing forms
/// require min(rho) >= floor; wave_form tolerates rho >= 0.
VectorField bohm_force(const ScalarField& rho, BohmForm form, DiffBackend b,
                       double floor = kDensityFloor);

/// 2ν div(ρ Du).
VectorField viscous_force(const ScalarField& rho, const VectorField& u,
                          double nu, DiffBackend b);

struct Tendency {
  ScalarField d_rho;
  VectorField d_mom;
};

/// Right-hand side of the (ρ, ρu) system:
///   d_rho = −div(ρu)
///   d_mom = −div(ρu⊗u) − ∇ρ^γ + 2ν div(ρDu) + κ²·bohm_force
Tendency rhs_original(const FluidState& s, const PhysParams& p, BohmForm form,
                      DiffBackend b);

}  // namespace qns
