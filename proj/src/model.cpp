#include "qns/model.hpp"

#include <cmath>

namespace qns {

void validate(const PhysParams& p) {
  if (!(p.nu > 0.0)) throw RegimeViolation("nu must be > 0");
  if (!(p.kappa >= 0.0)) throw RegimeViolation("kappa must be >= 0");
  if (!(p.gamma > 1.0)) throw RegimeViolation("gamma must be > 1");
}

BohmForm parse_bohm_form(const std::string& name) {
  if (name == "pressure") return BohmForm::pressure_form;
  if (name == "log_hessian") return BohmForm::log_hessian_form;
  if (name == "wave") return BohmForm::wave_form;
  throw Error("unknown bohm form: " + name);
}

std::string bohm_form_name(BohmForm f) {
  switch (f) {
    case BohmForm::pressure_form: return "pressure";
    case BohmForm::log_hessian_form: return "log_hessian";
    case BohmForm::wave_form: return "wave";
  }
  return "unknown";
}

void check_floor(const ScalarField& rho, double floor, double t) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] >= floor))
      throw VacuumReached("density " + std::to_string(rho[i]) + " below floor " +
                              std::to_string(floor) + " at cell " +
                              std::to_string(i),
                          t, i);
  }
}

VectorField velocity(const FluidState& s, double floor) {
  check_floor(s.rho, floor);
  return div(s.mom, s.rho);
}

VectorField grad_log_density(const ScalarField& rho, DiffBackend b,
                             double floor) {
  check_floor(rho, floor);
  const ScalarField root = sqrt(rho);
  VectorField g = gradient(root, b);
  for (int d = 0; d < rho.grid.dim; ++d)
    g.comp[d] = scale(div(g.comp[d], root), 2.0);
  return g;
}

ScalarField pressure_field(const ScalarField& rho, double gamma) {
  return map(rho, [gamma](double r) { return std::pow(r, gamma); });
}

VectorField bohm_force(const ScalarField& rho, BohmForm form, DiffBackend b,
                       double floor) {
  const Grid& g = rho.grid;
  switch (form) {
    case BohmForm::pressure_form: {
      check_floor(rho, floor);
      const ScalarField root = sqrt(rho);
      const ScalarField q = div(laplacian(root, b), root);
      VectorField out = gradient(q, b);
      const ScalarField two_rho = scale(rho, 2.0);
      for (int d = 0; d < g.dim; ++d) out.comp[d] = mul(out.comp[d], two_rho);
      return out;
    }
    case BohmForm::log_hessian_form: {
      const VectorField glog = grad_log_density(rho, b, floor);
      // T_ij = ρ ∂_j (∇log ρ)_i
      TensorField t(g);
      for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
          t.at(i, j) = mul(partial(glog.comp[i], j, b), rho);
      return div_tensor(t, b);
    }
    case BohmForm::wave_form: {
      const ScalarField root = sqrt(rho);
      const VectorField groot = gradient(root, b);
      const VectorField lead = gradient(laplacian(rho, b), b);
      const VectorField tail = div_tensor(outer(groot, groot), b);
      VectorField out(g);
      for (int d = 0; d < g.dim; ++d)
        out.comp[d] = axpy(-4.0, tail.comp[d], lead.comp[d]);
      return out;
    }
  }
  throw Error("bad bohm form");
}

VectorField viscous_force(const ScalarField& rho, const VectorField& u,
                          double nu, DiffBackend b) {
  const TensorField strain = sym_grad(u, b);
  VectorField out = div_tensor(mul(strain, rho), b);
  return scale(out, 2.0 * nu);
}

Tendency rhs_original(const FluidState& s, const PhysParams& p, BohmForm form,
                      DiffBackend b) {
  const VectorField u = velocity(s);

  Tendency t;
  t.d_rho = scale(divergence(s.mom, b), -1.0);

  const VectorField conv = div_tensor(outer(s.mom, u), b);
  const VectorField pgrad = gradient(pressure_field(s.rho, p.gamma), b);
  const VectorField visc = viscous_force(s.rho, u, p.nu, b);

  t.d_mom = VectorField(s.grid);
  for (int d = 0; d < s.grid.dim; ++d)
    t.d_mom.comp[d] =
        sub(visc.comp[d], add(conv.comp[d], pgrad.comp[d]));
  if (p.kappa > 0.0) {
    const VectorField bohm = bohm_force(s.rho, form, b);
    const double k2 = p.kappa * p.kappa;
    for (int d = 0; d < s.grid.dim; ++d)
      axpy_inplace(k2, bohm.comp[d], t.d_mom.comp[d]);
  }
  return t;
}

}  // namespace qns
