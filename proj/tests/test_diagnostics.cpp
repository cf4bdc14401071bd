#include <cmath>

#include "doctest.h"
#include "qns/diagnostics.hpp"
#include "qns/initial_data.hpp"
#include "qns/timeint.hpp"

using namespace qns;

namespace {

const double kTwoPi = 2.0 * M_PI;

// ρ ≡ c, u = a sin x on the 1D torus: every functional is elementary.
FluidState flat_sine(int n, double c, double a) {
  const Grid g = make_grid(1, n, kTwoPi);
  FluidState s(g);
  s.rho = ScalarField(g, c);
  s.mom.comp[0] = scale(
      sample(g, [](const std::array<double, 3>& x) { return std::sin(x[0]); }),
      c * a);
  return s;
}

// Independent rectangle-rule quadrature of an analytic integrand; n chosen
// far finer than any grid under test.
template <class F>
double fine_integral(F&& f, int n = 65536) {
  const double h = kTwoPi / static_cast<double>(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f(h * static_cast<double>(i));
  return acc * h;
}

}  // namespace

TEST_CASE("energy closed form on a flat-density sine flow") {
  // E = ½c a² ∫sin² + c^γ/(γ−1)·2π = ½c a² π + 2π c²  (γ = 2, ∇√ρ = 0).
  const FluidState s = flat_sine(64, 1.5, 0.8);
  const PhysParams p{0.1, 0.05, 2.0};
  const double want = 0.5 * 1.5 * 0.64 * M_PI + 2.0 * M_PI * 1.5 * 1.5;
  CHECK(energy(s, p, DiffBackend::spectral) ==
        doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("energy of the reference profile against fine quadrature") {
  const Grid g = make_grid(1, 128, kTwoPi);
  const FluidState s = make_initial_state(g, InitialData{});
  const PhysParams p{0.1, 0.05, 2.0};
  const double want = fine_integral([&](double x) {
    const double rho = 1.0 + 0.1 * std::cos(x);
    const double droot = -0.1 * std::sin(x) / (2.0 * std::sqrt(rho));
    return rho * rho / (p.gamma - 1.0) +
           2.0 * p.kappa * p.kappa * droot * droot;
  });
  CHECK(energy(s, p, DiffBackend::spectral) ==
        doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("energy dissipation closed form") {
  // 2ν∫ρ|Du|² = 2νc a²∫cos² = 2νc a²π; ν=0.1, c=1, a=1 → 0.2π.
  const FluidState s = flat_sine(64, 1.0, 1.0);
  const PhysParams p{0.1, 0.05, 2.0};
  CHECK(energy_dissipation(s, p, DiffBackend::spectral) ==
        doctest::Approx(0.2 * M_PI).epsilon(1e-13));
}

TEST_CASE("bd functional and dissipation closed forms") {
  // Flat ρ makes w = u, so the effective state is the fluid state itself.
  const Grid g = make_grid(1, 64, kTwoPi);
  EffectiveState s(g);
  s.rho = ScalarField(g, 1.0);
  s.mom.comp[0] =
      sample(g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  const PhysParams p{0.1, 0.05, 2.0};
  const EffectiveParams eff = effective_params(p.nu, p.kappa);

  // B = ½∫sin² + 2π/(γ−1) = π/2 + 2π.
  CHECK(bd_functional(s, p, DiffBackend::spectral) ==
        doctest::Approx(0.5 * M_PI + 2.0 * M_PI).epsilon(1e-13));
  // ∇ρ^{γ/2} = 0; 2λ∫|Dw|² + μ∫|∇w|² = (2λ + μ)π.
  CHECK(bd_dissipation(s, p, eff, DiffBackend::spectral) ==
        doctest::Approx((2.0 * eff.lambda + eff.mu) * M_PI).epsilon(1e-12));
}

TEST_CASE("mv functional closed form on constant speed") {
  // |w|² = 2 everywhere: M = |𝕋|·(1+1)log(1+1) = 2π·2 log 2.
  const Grid g = make_grid(1, 32, kTwoPi);
  EffectiveState s(g);
  s.rho = ScalarField(g, 1.0);
  s.mom.comp[0] = ScalarField(g, std::sqrt(2.0));
  CHECK(mv_functional(s, DiffBackend::spectral) ==
        doctest::Approx(kTwoPi * 2.0 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("mv terms vanish for uniform translation") {
  const Grid g = make_grid(2, 16, kTwoPi);
  EffectiveState s(g);
  s.rho = ScalarField(g, 1.0);
  s.mom.comp[0] = ScalarField(g, 0.7);
  const PhysParams p{0.1, 0.05, 2.0};
  const MvTerms t = mv_terms(s, p, effective_params(p.nu, p.kappa),
                             DiffBackend::spectral);
  for (double v : t.lhs) CHECK(std::abs(v) < 1e-12);
  for (double v : t.rhs) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("mv lhs terms against fine quadrature on a sine profile") {
  // ρ ≡ 1, w = a sin x: every lhs integral has an elementary integrand.
  const double a = 1.3;
  const FluidState fs = flat_sine(128, 1.0, a);
  EffectiveState s(fs.grid);
  s.rho = fs.rho;
  s.mom = fs.mom;
  const PhysParams p{0.1, 0.05, 2.0};
  const EffectiveParams eff = effective_params(p.nu, p.kappa);
  const MvTerms t = mv_terms(s, p, eff, DiffBackend::spectral);

  auto logterm = [a](double x) {
    return std::log1p(0.5 * a * a * std::sin(x) * std::sin(x));
  };
  auto dw2 = [a](double x) { return a * a * std::cos(x) * std::cos(x); };
  CHECK(t.lhs[0] == doctest::Approx(eff.mu * fine_integral(dw2)).epsilon(1e-10));
  CHECK(t.lhs[1] == doctest::Approx(eff.mu * fine_integral([&](double x) {
                      return dw2(x) * logterm(x);
                    })).epsilon(1e-8));
  CHECK(t.lhs[2] ==
        doctest::Approx(2.0 * eff.lambda * fine_integral(dw2)).epsilon(1e-10));
  CHECK(t.lhs[3] == doctest::Approx(2.0 * eff.lambda * fine_integral([&](double x) {
                      return dw2(x) * logterm(x);
                    })).epsilon(1e-8));
  // s' = a² sin x cos x; μ∫ s'²/(1+s).
  CHECK(t.lhs[4] == doctest::Approx(eff.mu * fine_integral([&](double x) {
                      const double ds =
                          a * a * std::sin(x) * std::cos(x);
                      const double sv = 0.5 * a * a * std::sin(x) * std::sin(x);
                      return ds * ds / (1.0 + sv);
                    })).epsilon(1e-8));
}

TEST_CASE("apriori norms on a flat sine flow") {
  const FluidState s = flat_sine(64, 1.0, 1.0);
  const PhysParams p{0.1, 0.05, 2.0};
  const NormBundle n = apriori_norms(s, p, DiffBackend::spectral);
  CHECK(n.sqrt_rho_u_l2 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(n.grad_sqrt_rho_l2 == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(n.rho_l1 == doctest::Approx(kTwoPi).epsilon(1e-13));
  CHECK(n.rho_lgamma == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-13));
  CHECK(n.sqrt_rho_grad_vel_l2 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(n.grad_rho_gamma_half_l2 == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(n.hess_sqrt_rho_l2 == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(n.pressure_l53 == doctest::Approx(std::pow(kTwoPi, 0.6)).epsilon(1e-13));
}

TEST_CASE("hessian comparison closed form") {
  // √ρ = 2 + cos x: ‖∇²√ρ‖₂ = ‖cos‖₂ = √π.
  const Grid g = make_grid(1, 128, kTwoPi);
  const ScalarField rho = sample(g, [](const std::array<double, 3>& x) {
    const double r = 2.0 + std::cos(x[0]);
    return r * r;
  });
  const HessianComparison h = hessian_comparison(rho, DiffBackend::spectral);
  CHECK(h.hess_sqrt_rho_l2 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(h.sqrt_rho_hess_log_sqrt_rho_l2 > 0.0);
  CHECK(std::isfinite(h.sqrt_rho_hess_log_sqrt_rho_l2));
}

TEST_CASE("make_record fills mass, extrema and both ledgers") {
  const Grid g = make_grid(1, 64, kTwoPi);
  const FluidState s = make_initial_state(g, InitialData{});
  const PhysParams p{0.1, 0.05, 2.0};
  const DiagnosticsRecord r = make_record(s, p, DiffBackend::spectral, 0.25);
  CHECK(r.t == 0.25);
  CHECK(r.mass == doctest::Approx(kTwoPi).epsilon(1e-13));
  CHECK(r.min_rho == doctest::Approx(0.9).epsilon(1e-13));
  CHECK(r.max_speed == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(r.energy > 0.0);
  CHECK(r.bd_functional > 0.0);
  CHECK(std::isfinite(r.mv_functional));
}

TEST_CASE("balance_residual rejects short or ragged trajectories") {
  Trajectory t;
  t.records.resize(2);
  CHECK_THROWS_AS(balance_residual(t, BalanceKind::energy), InsufficientSamples);
  t.records.resize(4);
  t.records[0].t = 0.0;
  t.records[1].t = 0.1;
  t.records[2].t = 0.2;
  t.records[3].t = 0.35;  // ragged
  CHECK_THROWS_AS(balance_residual(t, BalanceKind::energy), InsufficientSamples);
}

TEST_CASE("balance_residual is exact on a synthetic linear decay") {
  // E(t) = 5 − 0.3 t with dissipation 0.3: centered difference recovers the
  // slope exactly, so every residual is zero.
  Trajectory t;
  for (int k = 0; k <= 4; ++k) {
    DiagnosticsRecord r;
    r.t = 0.1 * static_cast<double>(k);
    r.energy = 5.0 - 0.3 * r.t;
    r.energy_dissipation = 0.3;
    t.records.push_back(r);
  }
  const auto reports = balance_residual(t, BalanceKind::energy);
  REQUIRE(reports.size() == 3);
  for (const BalanceReport& rep : reports) {
    CHECK(std::abs(rep.residual) < 1e-14);
    CHECK(rep.lhs_rate == doctest::Approx(-0.3).epsilon(1e-13));
    CHECK(std::abs(rep.relative_residual) < 1e-13);
  }
  // A mismatched dissipation shows up one-to-one in the residual.
  for (auto& r : t.records) r.energy_dissipation = 0.4;
  for (const BalanceReport& rep : balance_residual(t, BalanceKind::energy))
    CHECK(rep.residual == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("all three balances close on a 2D shear run") {
  // The cross term of the log-kinetic ledger only differs from its 1D
  // degenerate form when velocity and gradient directions mix.
  const Grid g = make_grid(2, 48, kTwoPi);
  InitialData d;
  d.velocity = InitialData::VelocityFamily::shear;
  d.u_amp = 0.4;
  RunOptions opt;
  opt.formulation = Formulation::effective;
  opt.control.t_end = 0.06;
  opt.cadence = 0.005;
  const RunResult res = run(make_initial_state(g, d), PhysParams{}, opt);
  REQUIRE(res.status == RunStatus::ok);
  for (BalanceKind kind : {BalanceKind::energy, BalanceKind::bd, BalanceKind::mv}) {
    double num = 0.0, den = 1e-30;
    for (const BalanceReport& rep : balance_residual(res.traj, kind)) {
      num = std::max(num, std::abs(rep.residual));
      den = std::max({den, std::abs(rep.lhs_rate), rep.dissipation_sum,
                      std::abs(rep.rhs_sum)});
    }
    CHECK(num / den < 2e-3);
  }
}

TEST_CASE("steady-state run has constant functionals and zero residuals") {
  const Grid g = make_grid(1, 32, kTwoPi);
  InitialData d;
  d.rho_amp = 0.0;
  RunOptions opt;
  opt.control.t_end = 0.1;
  opt.cadence = 0.02;
  const RunResult res = run(make_initial_state(g, d), PhysParams{}, opt);
  REQUIRE(res.status == RunStatus::ok);
  for (BalanceKind kind : {BalanceKind::energy, BalanceKind::bd, BalanceKind::mv})
    for (const BalanceReport& rep : balance_residual(res.traj, kind))
      CHECK(std::abs(rep.residual) < 1e-12);
  const double e0 = res.traj.records.front().energy;
  for (const DiagnosticsRecord& r : res.traj.records)
    CHECK(r.energy == doctest::Approx(e0).epsilon(1e-13));
}
