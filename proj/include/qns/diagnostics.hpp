#pragma once

#include <array>
#include <vector>

#include "qns/effective.hpp"

namespace qns {

/// Instantaneous spatial norms tracked as runtime monitors.
struct NormBundle {
  double sqrt_rho_u_l2 = 0.0;        ///< ‖√ρ u‖₂ (or ‖√ρ w‖₂ on effective runs)
  double grad_sqrt_rho_l2 = 0.0;     ///< ‖∇√ρ‖₂
  double rho_l1 = 0.0;               ///< ‖ρ‖₁
  double rho_lgamma = 0.0;           ///< ‖ρ‖_γ
  double sqrt_rho_grad_vel_l2 = 0.0; ///< ‖√ρ∇u‖₂ or ‖√ρ∇w‖₂
  double grad_rho_gamma_half_l2 = 0.0; ///< ‖∇ρ^{γ/2}‖₂
  double hess_sqrt_rho_l2 = 0.0;     ///< ‖∇²√ρ‖₂ (full Hessian Frobenius)
  double pressure_l53 = 0.0;         ///< ‖ρ^γ‖_{5/3}
};

/// One time sample of every functional, dissipation term and norm monitor.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double energy_dissipation = 0.0;
  double bd_functional = 0.0;
  double bd_dissipation = 0.0;
  double mv_functional = 0.0;
  std::array<double, 5> mv_lhs{};  ///< the five dissipation integrals
  std::array<double, 3> mv_rhs{};  ///< the three signed right-hand integrals
  NormBundle norms;
  double min_rho = 0.0;
  double max_speed = 0.0;
};

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
};

/// E = ∫ ½ρ|u|² + ρ^γ/(γ−1) + 2κ²|∇√ρ|² dx.
double energy(const FluidState& s, const PhysParams& p, DiffBackend b);

/// 2ν∫ρ|Du|² dx.
double energy_dissipation(const FluidState& s, const PhysParams& p,
                          DiffBackend b);

/// ∫ ρ|w|²/2 + ρ^γ/(γ−1) dx.
double bd_functional(const EffectiveState& s, const PhysParams& p,
                     DiffBackend b);

/// (4μ/γ)∫|∇ρ^{γ/2}|² + 2λ∫ρ|Dw|² + μ∫ρ|∇w|² dx.
double bd_dissipation(const EffectiveState& s, const PhysParams& p,
                      const EffectiveParams& eff, DiffBackend b);

/// ∫ρ(1+|w|²/2) log(1+|w|²/2) dx.
double mv_functional(const EffectiveState& s, DiffBackend b);

struct MvTerms {
  std::array<double, 5> lhs{};
  std::array<double, 3> rhs{};
};

/// The eight integrals of the log-kinetic-energy ledger; lhs entries are the
/// five dissipation terms (non-negative for the first four), rhs entries
/// carry their leading signs.
MvTerms mv_terms(const EffectiveState& s, const PhysParams& p,
                 const EffectiveParams& eff, DiffBackend b);

NormBundle apriori_norms(const FluidState& s, const PhysParams& p,
                         DiffBackend b);
NormBundle apriori_norms(const EffectiveState& s, const PhysParams& p,
                         DiffBackend b);

/// Both sides of the Hessian bound ‖∇²√ρ‖ ≲ ‖√ρ∇²log√ρ‖, for inspection
/// (the constant is not quantified, so there is no pass/fail form).
struct HessianComparison {
  double hess_sqrt_rho_l2 = 0.0;
  double sqrt_rho_hess_log_sqrt_rho_l2 = 0.0;
};
HessianComparison hessian_comparison(const ScalarField& rho, DiffBackend b,
                                     double floor = kDensityFloor);

/// Full record builders. The original-formulation builder derives w through
/// the transform when 0 < κ < ν and falls back to w = u otherwise.
DiagnosticsRecord make_record(const FluidState& s, const PhysParams& p,
                              DiffBackend b, double t);
DiagnosticsRecord make_record(const EffectiveState& s, const PhysParams& p,
                              const EffectiveParams& eff, DiffBackend b,
                              double t);

enum class BalanceKind { energy, bd, mv };

struct BalanceReport {
  double t1 = 0.0;
  double t2 = 0.0;
  double lhs_rate = 0.0;
  double dissipation_sum = 0.0;
  double rhs_sum = 0.0;
  double residual = 0.0;
  double relative_residual = 0.0;
};

/// Centered-difference balance residuals on a uniform-cadence trajectory;
/// endpoint samples are dropped. Throws InsufficientSamples for < 3 records.
std::vector<BalanceReport> balance_residual(const Trajectory& traj,
                                            BalanceKind which);

}  // namespace qns
