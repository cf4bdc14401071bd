#pragma once

#include <optional>
#include <string>

#include "qns/diagnostics.hpp"

namespace qns {

struct StepControl {
  double cfl = 0.4;       ///< safety factor in (0, 1]
  double dt_max = 1.0;
  double t_end = 1.0;
  double floor = kDensityFloor;
};

void validate(const StepControl& c);

enum class Formulation { original, effective };

Formulation parse_formulation(const std::string& name);

/// dt = cfl · min( h/(max|u| + max c_s), h²/(4ν_eff), h²/(4κ) [κ>0], dt_max )
/// with c_s = √(γρ^{γ−1}) and ν_eff = ν (original) or μ+2λ (effective).
double stable_dt(const FluidState& s, const PhysParams& p,
                 const StepControl& c);
double stable_dt(const EffectiveState& s, const PhysParams& p,
                 const EffectiveParams& eff, const StepControl& c);

namespace detail {
template <class S>
S state_axpy(const S& base, double a, const Tendency& t) {
  S out(base.grid);
  out.rho = axpy(a, t.d_rho, base.rho);
  for (int d = 0; d < base.grid.dim; ++d)
    out.mom.comp[d] = axpy(a, t.d_mom.comp[d], base.mom.comp[d]);
  return out;
}

template <class S>
bool state_finite(const S& s) {
  if (!all_finite(s.rho)) return false;
  for (const auto& c : s.mom.comp)
    if (!all_finite(c)) return false;
  return true;
}
}  // namespace detail

/// Classical four-stage Runge-Kutta update of (ρ, momentum) jointly. The
/// floor is checked on the full-step result; a violating step is not retried.
template <class S, class Rhs>
S step_rk4(const S& y, Rhs&& rhs, double dt,
           double floor = kDensityFloor, double t = 0.0) {
  const Tendency k1 = rhs(y);
  const Tendency k2 = rhs(detail::state_axpy(y, 0.5 * dt, k1));
  const Tendency k3 = rhs(detail::state_axpy(y, 0.5 * dt, k2));
  const Tendency k4 = rhs(detail::state_axpy(y, dt, k3));

  S out(y.grid);
  const double c = dt / 6.0;
  out.rho = y.rho;
  for (std::size_t i = 0; i < out.rho.size(); ++i)
    out.rho[i] += c * (k1.d_rho[i] + 2.0 * k2.d_rho[i] + 2.0 * k3.d_rho[i] +
                       k4.d_rho[i]);
  out.mom = y.mom;
  for (int d = 0; d < y.grid.dim; ++d) {
    ScalarField& m = out.mom.comp[d];
    for (std::size_t i = 0; i < m.size(); ++i)
      m[i] += c * (k1.d_mom.comp[d][i] + 2.0 * k2.d_mom.comp[d][i] +
                   2.0 * k3.d_mom.comp[d][i] + k4.d_mom.comp[d][i]);
  }

  if (!detail::state_finite(out))
    throw NumericalBlowup("non-finite value after step", t);
  check_floor(out.rho, floor, t);
  return out;
}

enum class RunStatus { ok, vacuum, blowup };

/// L²-in-time accumulations of the monitored norms (trapezoid on the
/// cadence grid, so approximations of the time-integrated bounds).
struct TimeIntegrals {
  double sqrt_rho_grad_vel_l2t = 0.0;
  double grad_rho_gamma_half_l2t = 0.0;
  double hess_sqrt_rho_l2t = 0.0;
};

struct RunOptions {
  Formulation formulation = Formulation::original;
  BohmForm form = BohmForm::wave_form;
  DiffBackend backend = DiffBackend::spectral;
  StepControl control;
  double cadence = 0.01;  ///< simulated-time units between records
};

struct RunResult {
  RunStatus status = RunStatus::ok;
  std::string message;
  double t_final = 0.0;
  Trajectory traj;
  FluidState final_state;                       ///< last good state, (ρ, ρu)
  std::optional<EffectiveState> final_effective;///< set on effective runs
  TimeIntegrals integrals;
  long steps = 0;
};

/// Advance to t_end with stable_dt steps (clipped to land on every cadence
/// point and on t_end exactly). Vacuum/blowup halts the run; the partial
/// trajectory is returned alongside the status.
RunResult run(const FluidState& initial, const PhysParams& p,
              const RunOptions& opt);

}  // namespace qns
