#include "qns/effective.hpp"

#include <cmath>

namespace qns {

EffectiveParams effective_params(double nu, double kappa) {
  if (!(nu > 0.0)) throw RegimeViolation("nu must be > 0");
  if (!(kappa > 0.0))
    throw RegimeViolation(
        "effective formulation requires kappa > 0 (the transform degenerates "
        "to w = u at kappa = 0)");
  if (!(kappa < nu))
    throw RegimeViolation("effective formulation requires kappa < nu");
  const double lambda = std::sqrt(nu * nu - kappa * kappa);
  return EffectiveParams{nu - lambda, lambda};
}

VectorField effective_velocity(const EffectiveState& s, double floor) {
  check_floor(s.rho, floor);
  return div(s.mom, s.rho);
}

EffectiveState to_effective(const FluidState& s, double mu, DiffBackend b) {
  const VectorField u = velocity(s);
  const VectorField glog = grad_log_density(s.rho, b);
  EffectiveState out(s.grid);
  out.rho = s.rho;
  for (int d = 0; d < s.grid.dim; ++d)
    out.mom.comp[d] = mul(axpy(mu, glog.comp[d], u.comp[d]), s.rho);
  return out;
}

FluidState from_effective(const EffectiveState& s, double mu, DiffBackend b) {
  const VectorField w = effective_velocity(s);
  const VectorField glog = grad_log_density(s.rho, b);
  FluidState out(s.grid);
  out.rho = s.rho;
  for (int d = 0; d < s.grid.dim; ++d)
    out.mom.comp[d] = mul(axpy(-mu, glog.comp[d], w.comp[d]), s.rho);
  return out;
}

Tendency rhs_effective(const EffectiveState& s, const PhysParams& p,
                       const EffectiveParams& eff, DiffBackend b) {
  const VectorField w = effective_velocity(s);

  Tendency t;
  t.d_rho = axpy(eff.mu, laplacian(s.rho, b),
                 scale(divergence(s.mom, b), -1.0));

  const VectorField conv = div_tensor(outer(s.mom, w), b);
  const VectorField pgrad = gradient(pressure_field(s.rho, p.gamma), b);
  const VectorField diff = laplacian_vec(s.mom, b);
  const VectorField visc = div_tensor(mul(sym_grad(w, b), s.rho), b);

  t.d_mom = VectorField(s.grid);
  for (int d = 0; d < s.grid.dim; ++d) {
    ScalarField m = sub(scale(visc.comp[d], 2.0 * eff.lambda),
                        add(conv.comp[d], pgrad.comp[d]));
    axpy_inplace(eff.mu, diff.comp[d], m);
    t.d_mom.comp[d] = std::move(m);
  }
  return t;
}

TransformResiduals transform_identity_residuals(const FluidState& s,
                                                const PhysParams& p,
                                                const EffectiveParams& eff,
                                                BohmForm form, DiffBackend b) {
  const double c = eff.mu;
  const VectorField u = velocity(s);
  const VectorField glog = grad_log_density(s.rho, b);
  const VectorField rho_glog = mul(glog, s.rho);

  TransformResiduals r;

  // (i) c·div(ρu⊗∇logρ + ρ∇logρ⊗u) = cΔ(ρu) − 2c·div(ρDu) + c∇div(ρu)
  {
    TensorField cross = outer(s.mom, glog);
    {
      const TensorField t2 = outer(rho_glog, u);
      for (std::size_t k = 0; k < cross.comp.size(); ++k)
        add_inplace(cross.comp[k], t2.comp[k]);
    }
    const VectorField lhs = div_tensor(cross, b);
    const VectorField lap = laplacian_vec(s.mom, b);
    const VectorField visc = div_tensor(mul(sym_grad(u, b), s.rho), b);
    const VectorField gdiv = grad_div(s.mom, b);
    double m = 0.0;
    for (int d = 0; d < s.grid.dim; ++d) {
      ScalarField rhs = axpy(-2.0, visc.comp[d], add(lap.comp[d], gdiv.comp[d]));
      m = std::max(m, max_abs(axpy(-1.0, rhs, lhs.comp[d])));
    }
    r.momentum_shift = c * m;
  }

  // (ii) c²·div(ρ∇logρ⊗∇logρ) = c²Δ(ρ∇logρ) − c²·div(ρ∇²logρ)
  {
    const VectorField lhs = div_tensor(outer(rho_glog, glog), b);
    const VectorField lap = laplacian_vec(rho_glog, b);
    const VectorField hess = bohm_force(s.rho, BohmForm::log_hessian_form, b);
    double m = 0.0;
    for (int d = 0; d < s.grid.dim; ++d) {
      const ScalarField rhs = sub(lap.comp[d], hess.comp[d]);
      m = std::max(m, max_abs(sub(lhs.comp[d], rhs)));
    }
    r.log_density_tensor = c * c * m;
  }

  // (iii) rhs_effective(to_effective(s)) vs the shifted original tendency:
  // d(ρw)/dt = d(ρu)/dt − μ∇div(ρu) and dρ/dt unchanged.
  {
    const EffectiveState es = to_effective(s, eff.mu, b);
    const Tendency te = rhs_effective(es, p, eff, b);
    const Tendency to = rhs_original(s, p, form, b);
    const VectorField gdiv = grad_div(s.mom, b);
    double m = max_abs(sub(te.d_rho, to.d_rho));
    for (int d = 0; d < s.grid.dim; ++d) {
      const ScalarField mapped = axpy(-eff.mu, gdiv.comp[d], to.d_mom.comp[d]);
      m = std::max(m, max_abs(sub(te.d_mom.comp[d], mapped)));
    }
    r.end_to_end = m;
  }

  return r;
}

}  // namespace qns
