#include "qns/timeint.hpp"

#include <cmath>

namespace qns {

void validate(const StepControl& c) {
  if (!(c.cfl > 0.0 && c.cfl <= 1.0))
    throw RegimeViolation("cfl must be in (0, 1]");
  if (!(c.dt_max > 0.0)) throw RegimeViolation("dt_max must be > 0");
  if (!(c.t_end >= 0.0)) throw RegimeViolation("t_end must be >= 0");
  if (!(c.floor > 0.0)) throw RegimeViolation("floor must be > 0");
}

Formulation parse_formulation(const std::string& name) {
  if (name == "original") return Formulation::original;
  if (name == "effective") return Formulation::effective;
  throw Error("unknown formulation: " + name);
}

namespace {

double stable_dt_impl(const Grid& g, const ScalarField& rho,
                      const VectorField& mom, double gamma, double nu_eff,
                      double kappa, const StepControl& c) {
  check_floor(rho, c.floor);
  const double h = g.spacing();
  const double max_speed = max_abs(div(mom, rho));
  const double max_rho = max_abs(rho);  // rho >= floor > 0
  const double cs = std::sqrt(gamma * std::pow(max_rho, gamma - 1.0));

  double dt = c.dt_max;
  dt = std::min(dt, h / (max_speed + cs));
  dt = std::min(dt, h * h / (4.0 * nu_eff));
  if (kappa > 0.0) dt = std::min(dt, h * h / (4.0 * kappa));
  return c.cfl * dt;
}

}  // namespace

double stable_dt(const FluidState& s, const PhysParams& p,
                 const StepControl& c) {
  return stable_dt_impl(s.grid, s.rho, s.mom, p.gamma, p.nu, p.kappa, c);
}

double stable_dt(const EffectiveState& s, const PhysParams& p,
                 const EffectiveParams& eff, const StepControl& c) {
  return stable_dt_impl(s.grid, s.rho, s.mom, p.gamma,
                        eff.mu + 2.0 * eff.lambda, p.kappa, c);
}

namespace {

void accumulate(TimeIntegrals& acc, const DiagnosticsRecord& a,
                const DiagnosticsRecord& b) {
  const double half_dt = 0.5 * (b.t - a.t);
  auto sq = [](double x) { return x * x; };
  acc.sqrt_rho_grad_vel_l2t += half_dt * (sq(a.norms.sqrt_rho_grad_vel_l2) +
                                          sq(b.norms.sqrt_rho_grad_vel_l2));
  acc.grad_rho_gamma_half_l2t +=
      half_dt * (sq(a.norms.grad_rho_gamma_half_l2) +
                 sq(b.norms.grad_rho_gamma_half_l2));
  acc.hess_sqrt_rho_l2t +=
      half_dt * (sq(a.norms.hess_sqrt_rho_l2) + sq(b.norms.hess_sqrt_rho_l2));
}

// Shared time loop for both formulations; Record and Dt bind the
// formulation-specific pieces.
template <class S, class Rhs, class Record, class Dt>
void evolve(S& state, RunResult& res, const StepControl& ctrl, double cadence,
            Rhs&& rhs, Record&& record, Dt&& next_dt) {
  double t = 0.0;
  res.traj.records.push_back(record(state, 0.0));
  long emit_index = 0;

  while (t < ctrl.t_end - 1e-14 * std::max(1.0, ctrl.t_end)) {
    double dt = next_dt(state);
    bool lands_on_emit = false;
    double landing = 0.0;
    if (cadence > 0.0) {
      const double next_emit = static_cast<double>(emit_index + 1) * cadence;
      if (next_emit <= ctrl.t_end + 1e-14 && t + dt >= next_emit - 1e-14) {
        dt = next_emit - t;
        lands_on_emit = true;
        landing = next_emit;
      }
    }
    if (t + dt >= ctrl.t_end - 1e-14) {
      dt = ctrl.t_end - t;
      landing = ctrl.t_end;
    }
    if (!(dt > 0.0)) break;

    state = step_rk4(state, rhs, dt, ctrl.floor, t);
    ++res.steps;
    t = (lands_on_emit || landing == ctrl.t_end) ? landing : t + dt;
    res.t_final = t;

    const bool at_end = t >= ctrl.t_end - 1e-14;
    if (lands_on_emit || at_end) {
      if (lands_on_emit) ++emit_index;
      const DiagnosticsRecord rec = record(state, t);
      accumulate(res.integrals, res.traj.records.back(), rec);
      res.traj.records.push_back(rec);
      if (at_end) break;
    }
  }
}

}  // namespace

RunResult run(const FluidState& initial, const PhysParams& p,
              const RunOptions& opt) {
  validate(p);
  validate(opt.control);
  validate_backend(initial.grid, opt.backend);

  RunResult res;
  res.final_state = initial;

  if (opt.formulation == Formulation::original) {
    FluidState state = initial;
    try {
      evolve(
          state, res, opt.control, opt.cadence,
          [&](const FluidState& s) {
            return rhs_original(s, p, opt.form, opt.backend);
          },
          [&](const FluidState& s, double t) {
            return make_record(s, p, opt.backend, t);
          },
          [&](const FluidState& s) { return stable_dt(s, p, opt.control); });
    } catch (const VacuumReached& e) {
      res.status = RunStatus::vacuum;
      res.message = e.what();
    } catch (const NumericalBlowup& e) {
      res.status = RunStatus::blowup;
      res.message = e.what();
    }
    res.final_state = std::move(state);
  } else {
    const EffectiveParams eff = effective_params(p.nu, p.kappa);
    EffectiveState state = to_effective(initial, eff.mu, opt.backend);
    try {
      evolve(
          state, res, opt.control, opt.cadence,
          [&](const EffectiveState& s) {
            return rhs_effective(s, p, eff, opt.backend);
          },
          [&](const EffectiveState& s, double t) {
            return make_record(s, p, eff, opt.backend, t);
          },
          [&](const EffectiveState& s) {
            return stable_dt(s, p, eff, opt.control);
          });
    } catch (const VacuumReached& e) {
      res.status = RunStatus::vacuum;
      res.message = e.what();
    } catch (const NumericalBlowup& e) {
      res.status = RunStatus::blowup;
      res.message = e.what();
    }
    res.final_effective = state;
    try {
      res.final_state = from_effective(state, eff.mu, opt.backend);
    } catch (const VacuumReached&) {
      // Last good state cannot be mapped back; keep the initial copy.
    }
  }
  return res;
}

}  // namespace qns
