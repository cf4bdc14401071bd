#pragma once

#include "qns/model.hpp"

namespace qns {

/// Derived coefficients of the effective-velocity system:
///   mu = ν − √(ν²−κ²), lambda = √(ν²−κ²)
/// so that mu + lambda = ν and κ² = 2νμ − μ² (the capillarity term cancels).
struct EffectiveParams {
  double mu = 0.0;
  double lambda = 0.0;
};

/// Requires 0 < kappa < nu; throws RegimeViolation otherwise (for κ = 0 the
/// transform degenerates to w = u, which is rejected rather than no-opped).
EffectiveParams effective_params(double nu, double kappa);

/// Conserved variables of the transformed system: rho and rho*w with
/// w = u + mu ∇log ρ.
struct EffectiveState {
  Grid grid;
  ScalarField rho;
  VectorField mom;  // stores ρw

  EffectiveState() = default;
  explicit EffectiveState(const Grid& g) : grid(g), rho(g), mom(g) {}
};

/// w = mom/rho; throws VacuumReached below floor.
VectorField effective_velocity(const EffectiveState& s,
                               double floor = kDensityFloor);

EffectiveState to_effective(const FluidState& s, double mu, DiffBackend b);
FluidState from_effective(const EffectiveState& s, double mu, DiffBackend b);

/// Right-hand side of the (ρ, ρw) system:
///   d_rho = −div(ρw) + μΔρ
///   d_mom = −div(ρw⊗w) − ∇ρ^γ + μΔ(ρw) + 2λ div(ρDw)
/// No third-order term appears.
Tendency rhs_effective(const EffectiveState& s, const PhysParams& p,
                       const EffectiveParams& eff, DiffBackend b);

/// Max-norm discrete residuals of the elementary identities behind the
/// transform, all zero at continuum:
///   momentum_shift:     c·div(ρu⊗∇logρ + ρ∇logρ⊗u)
///                         − [cΔ(ρu) − 2c·div(ρDu) + c∇div(ρu)]
///   log_density_tensor: c²·div(ρ∇logρ⊗∇logρ)
///                         − [c²Δ(ρ∇logρ) − c²·div(ρ∇²logρ)]
///   end_to_end:         rhs_effective(to_effective(s)) vs the shifted
///                       rhs_original(s) (momentum and density residuals).
struct TransformResiduals {
  double momentum_shift = 0.0;
  double log_density_tensor = 0.0;
  double end_to_end = 0.0;
};

TransformResiduals transform_identity_residuals(const FluidState& s,
                                                const PhysParams& p,
                                                const EffectiveParams& eff,
                                                BohmForm form, DiffBackend b);

}  // namespace qns
