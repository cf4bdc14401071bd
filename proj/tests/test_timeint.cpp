#include <cmath>

#include "doctest.h"
#include "qns/initial_data.hpp"
#include "qns/timeint.hpp"

using namespace qns;

namespace {

const double kTwoPi = 2.0 * M_PI;

FluidState reference_initial(int n) {
  const Grid g = make_grid(1, n, kTwoPi);
  InitialData d;  // ρ = 1 + 0.1 cos x, u = 0
  return make_initial_state(g, d);
}

Tendency rhs_ref(const FluidState& s, const PhysParams& p) {
  return rhs_original(s, p, BohmForm::wave_form, DiffBackend::spectral);
}

}  // namespace

TEST_CASE("stable_dt is the viscous bound on the reference state") {
  // h = 2π/128; h²/(4ν) ≈ 6.03e−3 beats the acoustic bound h/c_s ≈ 3.3e−2
  // and the dispersive bound h²/(4κ) ≈ 1.2e−2; dt = 0.4·h²/(4ν) ≈ 2.41e−3.
  const FluidState s = reference_initial(128);
  const PhysParams p{0.1, 0.05, 2.0};
  StepControl c;
  const double h = kTwoPi / 128.0;
  CHECK(stable_dt(s, p, c) ==
        doctest::Approx(0.4 * h * h / (4.0 * 0.1)).epsilon(1e-12));

  // Lifting ν to 10 hands the bound to dt_max·cfl when dt_max is small.
  StepControl tight = c;
  tight.dt_max = 1e-6;
  CHECK(stable_dt(s, p, tight) == doctest::Approx(0.4e-6).epsilon(1e-12));
}

TEST_CASE("effective stable_dt uses the combined diffusion coefficient") {
  const FluidState s = reference_initial(128);
  const PhysParams p{0.1, 0.05, 2.0};
  const EffectiveParams e = effective_params(p.nu, p.kappa);
  const EffectiveState w = to_effective(s, e.mu, DiffBackend::spectral);
  StepControl c;
  const double h = kTwoPi / 128.0;
  const double nu_eff = e.mu + 2.0 * e.lambda;
  CHECK(stable_dt(w, p, e, c) ==
        doctest::Approx(0.4 * h * h / (4.0 * nu_eff)).epsilon(1e-10));
}

TEST_CASE("dt = 0 step is the identity") {
  const FluidState s = reference_initial(32);
  const PhysParams p{0.1, 0.05, 2.0};
  const FluidState out =
      step_rk4(s, [&](const FluidState& y) { return rhs_ref(y, p); }, 0.0);
  CHECK(max_abs(sub(out.rho, s.rho)) == 0.0);
  CHECK(max_abs(sub(out.mom.comp[0], s.mom.comp[0])) == 0.0);
}

TEST_CASE("constant state stays put over many steps") {
  const Grid g = make_grid(1, 32, kTwoPi);
  FluidState s(g);
  s.rho = ScalarField(g, 1.5);
  const PhysParams p{0.1, 0.05, 2.0};
  for (int i = 0; i < 10; ++i)
    s = step_rk4(s, [&](const FluidState& y) { return rhs_ref(y, p); }, 1e-2);
  CHECK(max_abs(sub(s.rho, ScalarField(g, 1.5))) < 1e-13);
  CHECK(max_abs(s.mom.comp[0]) < 1e-13);
}

TEST_CASE("step halving shows fourth-order local accuracy") {
  // Richardson: |y(dt) − y(dt/2 twice)| / |y(dt/2 twice) − y(dt/4 four times)|
  // ≈ 2⁴ for an order-4 one-step method.
  const Grid g = make_grid(1, 64, kTwoPi);
  InitialData d;
  d.rho_amp = 0.3;
  d.velocity = InitialData::VelocityFamily::sine;
  d.u_amp = 0.5;
  const FluidState s0 = make_initial_state(g, d);
  const PhysParams p{0.1, 0.05, 2.0};
  auto advance = [&](double dt, int steps) {
    FluidState s = s0;
    for (int i = 0; i < steps; ++i)
      s = step_rk4(s, [&](const FluidState& y) { return rhs_ref(y, p); }, dt);
    return s;
  };
  const double dt = 1e-2;
  const FluidState a = advance(dt, 1);
  const FluidState b = advance(dt / 2.0, 2);
  const FluidState c = advance(dt / 4.0, 4);
  const double ab = std::max(max_abs(sub(a.rho, b.rho)),
                             max_abs(sub(a.mom.comp[0], b.mom.comp[0])));
  const double bc = std::max(max_abs(sub(b.rho, c.rho)),
                             max_abs(sub(b.mom.comp[0], c.mom.comp[0])));
  const double ratio = ab / bc;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("non-finite step reports blowup") {
  // A tendency near DBL_MAX overflows inside the RK combination.
  const FluidState s = reference_initial(32);
  auto huge_rhs = [&](const FluidState& y) {
    Tendency t;
    t.d_rho = ScalarField(y.grid, 1e308);
    t.d_mom = VectorField(y.grid);
    return t;
  };
  CHECK_THROWS_AS(step_rk4(s, huge_rhs, 1.0), NumericalBlowup);
}

TEST_CASE("run with t_end = 0 emits the single initial record") {
  RunOptions opt;
  opt.control.t_end = 0.0;
  const RunResult res = run(reference_initial(32), PhysParams{}, opt);
  CHECK(res.status == RunStatus::ok);
  CHECK(res.traj.records.size() == 1);
  CHECK(res.traj.records[0].t == 0.0);
  CHECK(res.steps == 0);
}

TEST_CASE("run lands on every cadence point exactly") {
  RunOptions opt;
  opt.control.t_end = 0.1;
  opt.cadence = 0.02;
  const RunResult res = run(reference_initial(64), PhysParams{}, opt);
  CHECK(res.status == RunStatus::ok);
  REQUIRE(res.traj.records.size() == 6);
  for (std::size_t k = 0; k < res.traj.records.size(); ++k)
    CHECK(res.traj.records[k].t ==
          doctest::Approx(0.02 * static_cast<double>(k)).epsilon(1e-14));
  CHECK(res.t_final == 0.1);
}

TEST_CASE("mass and momentum are conserved over a run") {
  RunOptions opt;
  opt.control.t_end = 0.2;
  for (Formulation f : {Formulation::original, Formulation::effective}) {
    opt.formulation = f;
    const RunResult res = run(reference_initial(64), PhysParams{}, opt);
    REQUIRE(res.status == RunStatus::ok);
    const double m0 = res.traj.records.front().mass;
    for (const DiagnosticsRecord& r : res.traj.records)
      CHECK(std::abs(r.mass - m0) <= 1e-12 * std::abs(m0));
  }
}

TEST_CASE("effective run mirrors the original run") {
  RunOptions opt;
  opt.control.t_end = 0.1;
  const FluidState s0 = reference_initial(64);
  opt.formulation = Formulation::original;
  const RunResult orig = run(s0, PhysParams{}, opt);
  opt.formulation = Formulation::effective;
  const RunResult eff = run(s0, PhysParams{}, opt);
  REQUIRE(orig.status == RunStatus::ok);
  REQUIRE(eff.status == RunStatus::ok);
  CHECK(max_abs(sub(orig.final_state.rho, eff.final_state.rho)) < 1e-10);
  CHECK(max_abs(sub(orig.final_state.mom.comp[0], eff.final_state.mom.comp[0])) <
        1e-10);
  CHECK(eff.final_effective.has_value());
}

TEST_CASE("a near-vacuum run halts with a partial trajectory") {
  const Grid g = make_grid(1, 128, kTwoPi);
  InitialData d;
  d.density = InitialData::DensityFamily::near_vacuum;
  d.rho_mean = 1e-6;
  d.rho_amp = 0.5;
  RunOptions opt;
  opt.control.t_end = 1.0;
  const RunResult res = run(make_initial_state(g, d), PhysParams{}, opt);
  CHECK(res.status == RunStatus::vacuum);
  CHECK(!res.message.empty());
  REQUIRE(!res.traj.records.empty());
  CHECK(res.traj.records.back().min_rho >= kDensityFloor);
}
