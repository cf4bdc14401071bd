#include "qns/diagnostics.hpp"

#include <cmath>

namespace qns {

namespace {

/// ∫ f·g dx
double weighted_integral(const ScalarField& f, const ScalarField& g) {
  double hpow = 1.0;
  const double h = f.grid.spacing();
  for (int d = 0; d < f.grid.dim; ++d) hpow *= h;
  return hpow * kernels::dot(f.data(), g.data(), f.size());
}

/// Hessian Frobenius square Σ_ij (∂_i∂_j f)², using symmetry.
ScalarField hessian_frobenius_sq(const ScalarField& f, DiffBackend b) {
  ScalarField acc(f.grid);
  for (int i = 0; i < f.grid.dim; ++i) {
    for (int j = i; j < f.grid.dim; ++j) {
      const ScalarField d2 =
          (i == j) ? partial2(f, i, b) : partial(partial(f, i, b), j, b);
      const double w = (i == j) ? 1.0 : 2.0;
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * d2[k] * d2[k];
    }
  }
  return acc;
}

NormBundle norms_impl(const ScalarField& rho, const VectorField& vel,
                      const PhysParams& p, DiffBackend b) {
  NormBundle n;
  const ScalarField root = sqrt(rho);
  n.sqrt_rho_u_l2 = std::sqrt(weighted_integral(rho, norm_sq(vel)));
  n.grad_sqrt_rho_l2 = std::sqrt(integrate(norm_sq(gradient(root, b))));
  n.rho_l1 = integrate(rho);
  const ScalarField rho_g = pressure_field(rho, p.gamma);
  n.rho_lgamma = std::pow(integrate(rho_g), 1.0 / p.gamma);
  n.sqrt_rho_grad_vel_l2 =
      std::sqrt(weighted_integral(rho, frobenius_sq(grad_vec(vel, b))));
  const ScalarField rho_gh = pressure_field(rho, 0.5 * p.gamma);
  n.grad_rho_gamma_half_l2 =
      std::sqrt(integrate(norm_sq(gradient(rho_gh, b))));
  n.hess_sqrt_rho_l2 = std::sqrt(integrate(hessian_frobenius_sq(root, b)));
  n.pressure_l53 =
      std::pow(integrate(pressure_field(rho, p.gamma * 5.0 / 3.0)), 3.0 / 5.0);
  return n;
}

}  // namespace

double energy(const FluidState& s, const PhysParams& p, DiffBackend b) {
  const VectorField u = velocity(s);
  double e = 0.5 * weighted_integral(s.rho, norm_sq(u));
  e += integrate(pressure_field(s.rho, p.gamma)) / (p.gamma - 1.0);
  if (p.kappa > 0.0) {
    const VectorField groot = gradient(sqrt(s.rho), b);
    e += 2.0 * p.kappa * p.kappa * integrate(norm_sq(groot));
  }
  return e;
}

double energy_dissipation(const FluidState& s, const PhysParams& p,
                          DiffBackend b) {
  const VectorField u = velocity(s);
  return 2.0 * p.nu *
         weighted_integral(s.rho, frobenius_sq(sym_grad(u, b)));
}

double bd_functional(const EffectiveState& s, const PhysParams& p,
                     DiffBackend b) {
  (void)b;
  const VectorField w = effective_velocity(s);
  return 0.5 * weighted_integral(s.rho, norm_sq(w)) +
         integrate(pressure_field(s.rho, p.gamma)) / (p.gamma - 1.0);
}

double bd_dissipation(const EffectiveState& s, const PhysParams& p,
                      const EffectiveParams& eff, DiffBackend b) {
  const VectorField w = effective_velocity(s);
  const ScalarField rho_gh = pressure_field(s.rho, 0.5 * p.gamma);
  double d = (4.0 * eff.mu / p.gamma) *
             integrate(norm_sq(gradient(rho_gh, b)));
  d += 2.0 * eff.lambda *
       weighted_integral(s.rho, frobenius_sq(sym_grad(w, b)));
  d += eff.mu * weighted_integral(s.rho, frobenius_sq(grad_vec(w, b)));
  return d;
}

double mv_functional(const EffectiveState& s, DiffBackend b) {
  (void)b;
  const VectorField w = effective_velocity(s);
  const ScalarField half_w2 = scale(norm_sq(w), 0.5);
  const ScalarField integrand = map(half_w2, [](double v) {
    return (1.0 + v) * std::log1p(v);
  });
  return weighted_integral(s.rho, integrand);
}

MvTerms mv_terms(const EffectiveState& s, const PhysParams& p,
                 const EffectiveParams& eff, DiffBackend b) {
  const VectorField w = effective_velocity(s);
  const TensorField gw = grad_vec(w, b);     // (∇w)_ij = ∂_j w_i
  const TensorField dw = sym_grad(w, b);
  const ScalarField half_w2 = scale(norm_sq(w), 0.5);
  const ScalarField logterm = map(half_w2, [](double v) { return std::log1p(v); });
  const ScalarField weight = map(half_w2, [](double v) { return 1.0 / (1.0 + v); });

  const ScalarField gw_sq = frobenius_sq(gw);
  const ScalarField dw_sq = frobenius_sq(dw);

  MvTerms out;
  out.lhs[0] = eff.mu * weighted_integral(s.rho, gw_sq);
  out.lhs[1] = eff.mu * weighted_integral(s.rho, mul(gw_sq, logterm));
  out.lhs[2] = 2.0 * eff.lambda * weighted_integral(s.rho, dw_sq);
  out.lhs[3] =
      2.0 * eff.lambda * weighted_integral(s.rho, mul(dw_sq, logterm));
  const VectorField grad_s = gradient(half_w2, b);
  out.lhs[4] = eff.mu * weighted_integral(s.rho, mul(norm_sq(grad_s), weight));

  const int dim = s.grid.dim;
  // cross = Σ_{ij} (Dw)_ij w_j ∂_i(|w|²/2); the β'' contraction produced by
  // testing 2λ div(ρDw) with w β'(|w|²/2).
  ScalarField cross(s.grid);
  for (int i = 0; i < dim; ++i) {
    ScalarField a(s.grid);
    for (int j = 0; j < dim; ++j)
      kernels::mul_add(dw.at(i, j).data(), w.comp[j].data(), a.data(), a.data(),
                       a.size());
    kernels::mul_add(a.data(), grad_s.comp[i].data(), cross.data(),
                     cross.data(), cross.size());
  }
  out.rhs[0] =
      -2.0 * eff.lambda * weighted_integral(s.rho, mul(cross, weight));

  const ScalarField rho_g = pressure_field(s.rho, p.gamma);
  {
    const ScalarField divw = divergence(w, b);
    const ScalarField wgt = map(logterm, [](double v) { return 1.0 + v; });
    out.rhs[1] = weighted_integral(rho_g, mul(divw, wgt));
  }
  {
    // w·∇(|w|²/2)
    ScalarField conv(s.grid);
    for (int i = 0; i < dim; ++i)
      kernels::mul_add(w.comp[i].data(), grad_s.comp[i].data(), conv.data(),
                       conv.data(), conv.size());
    out.rhs[2] = weighted_integral(rho_g, mul(conv, weight));
  }
  return out;
}

NormBundle apriori_norms(const FluidState& s, const PhysParams& p,
                         DiffBackend b) {
  return norms_impl(s.rho, velocity(s), p, b);
}

NormBundle apriori_norms(const EffectiveState& s, const PhysParams& p,
                         DiffBackend b) {
  return norms_impl(s.rho, effective_velocity(s), p, b);
}

HessianComparison hessian_comparison(const ScalarField& rho, DiffBackend b,
                                     double floor) {
  check_floor(rho, floor);
  HessianComparison out;
  const ScalarField root = sqrt(rho);
  out.hess_sqrt_rho_l2 = std::sqrt(integrate(hessian_frobenius_sq(root, b)));
  // √ρ ∇²log√ρ with ∇log√ρ = ∇√ρ/√ρ.
  VectorField glog = gradient(root, b);
  for (int d = 0; d < rho.grid.dim; ++d)
    glog.comp[d] = div(glog.comp[d], root);
  ScalarField acc(rho.grid);
  for (int i = 0; i < rho.grid.dim; ++i) {
    for (int j = 0; j < rho.grid.dim; ++j) {
      const ScalarField d2 = partial(glog.comp[i], j, b);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += d2[k] * d2[k];
    }
  }
  out.sqrt_rho_hess_log_sqrt_rho_l2 =
      std::sqrt(weighted_integral(rho, acc));
  return out;
}

namespace {

void fill_common(DiagnosticsRecord& r, const ScalarField& rho,
                 const VectorField& vel) {
  r.mass = integrate(rho);
  r.min_rho = min_value(rho);
  double ms = 0.0;
  const ScalarField speed_sq = norm_sq(vel);
  ms = std::sqrt(kernels::max_abs(speed_sq.data(), speed_sq.size()));
  r.max_speed = ms;
}

void fill_effective_part(DiagnosticsRecord& r, const EffectiveState& es,
                         const PhysParams& p, const EffectiveParams& eff,
                         DiffBackend b) {
  r.bd_functional = bd_functional(es, p, b);
  r.bd_dissipation = bd_dissipation(es, p, eff, b);
  r.mv_functional = mv_functional(es, b);
  const MvTerms mt = mv_terms(es, p, eff, b);
  r.mv_lhs = mt.lhs;
  r.mv_rhs = mt.rhs;
}

}  // namespace

DiagnosticsRecord make_record(const FluidState& s, const PhysParams& p,
                              DiffBackend b, double t) {
  DiagnosticsRecord r;
  r.t = t;
  fill_common(r, s.rho, velocity(s));
  r.energy = energy(s, p, b);
  r.energy_dissipation = energy_dissipation(s, p, b);
  r.norms = apriori_norms(s, p, b);
  if (p.kappa > 0.0 && p.kappa < p.nu) {
    const EffectiveParams eff = effective_params(p.nu, p.kappa);
    const EffectiveState es = to_effective(s, eff.mu, b);
    fill_effective_part(r, es, p, eff, b);
  } else {
    // Degenerate monitor: w = u, so the BD ledger reduces to the plain
    // kinetic-energy one with mu = 0.
    EffectiveState es(s.grid);
    es.rho = s.rho;
    es.mom = s.mom;
    fill_effective_part(r, es, p, EffectiveParams{0.0, p.nu}, b);
  }
  return r;
}

DiagnosticsRecord make_record(const EffectiveState& s, const PhysParams& p,
                              const EffectiveParams& eff, DiffBackend b,
                              double t) {
  DiagnosticsRecord r;
  r.t = t;
  fill_common(r, s.rho, effective_velocity(s));
  const FluidState fs = from_effective(s, eff.mu, b);
  r.energy = energy(fs, p, b);
  r.energy_dissipation = energy_dissipation(fs, p, b);
  r.norms = apriori_norms(s, p, b);
  fill_effective_part(r, s, p, eff, b);
  return r;
}

std::vector<BalanceReport> balance_residual(const Trajectory& traj,
                                            BalanceKind which) {
  const auto& rec = traj.records;
  if (rec.size() < 3)
    throw InsufficientSamples("balance residual needs >= 3 records, got " +
                              std::to_string(rec.size()));
  const double cadence = rec[1].t - rec[0].t;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    const double dt = rec[k].t - rec[k - 1].t;
    if (std::abs(dt - cadence) > 1e-9 * std::max(1.0, std::abs(cadence)))
      throw InsufficientSamples("balance residual requires uniform cadence");
  }

  auto functional = [which](const DiagnosticsRecord& r) {
    switch (which) {
      case BalanceKind::energy: return r.energy;
      case BalanceKind::bd: return r.bd_functional;
      case BalanceKind::mv: return r.mv_functional;
    }
    return 0.0;
  };
  auto dissipation = [which](const DiagnosticsRecord& r) {
    switch (which) {
      case BalanceKind::energy: return r.energy_dissipation;
      case BalanceKind::bd: return r.bd_dissipation;
      case BalanceKind::mv: {
        double s = 0.0;
        for (double v : r.mv_lhs) s += v;
        return s;
      }
    }
    return 0.0;
  };
  auto rhs = [which](const DiagnosticsRecord& r) {
    if (which != BalanceKind::mv) return 0.0;
    double s = 0.0;
    for (double v : r.mv_rhs) s += v;
    return s;
  };

  std::vector<BalanceReport> out;
  out.reserve(rec.size() - 2);
  for (std::size_t k = 1; k + 1 < rec.size(); ++k) {
    BalanceReport rep;
    rep.t1 = rec[k - 1].t;
    rep.t2 = rec[k + 1].t;
    rep.lhs_rate =
        (functional(rec[k + 1]) - functional(rec[k - 1])) / (rep.t2 - rep.t1);
    rep.dissipation_sum = dissipation(rec[k]);
    rep.rhs_sum = rhs(rec[k]);
    rep.residual = rep.lhs_rate + rep.dissipation_sum - rep.rhs_sum;
    const double denom =
        std::max({std::abs(rep.lhs_rate), rep.dissipation_sum, 1e-30});
    rep.relative_residual = rep.residual / denom;
    out.push_back(rep);
  }
  return out;
}

}  // namespace qns
