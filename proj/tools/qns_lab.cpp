// qns-lab: runs, identity checks and formulation comparisons for the
// quantum Navier-Stokes laboratory.
//
// Exit codes: 0 success, 2 configuration error, 3 vacuum/blowup,
// 4 I/O or format error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qns/checkpoint.hpp"
#include "qns/config.hpp"
#include "qns/csv.hpp"
#include "qns/effective.hpp"
#include "qns/initial_data.hpp"
#include "qns/timeint.hpp"

namespace {

using namespace qns;

struct ConfigCli {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_config_options(CLI::App& app, ConfigCli& cc) {
  app.add_option("--config", cc.config_path, "key = value config file");
  for (const std::string& key : config_keys()) {
    app.add_option_function<std::string>(
        "--" + key,
        [&cc, key](const std::string& v) { cc.overrides[key] = v; },
        "override config key '" + key + "'");
  }
}

RunConfig load_config(const ConfigCli& cc) {
  RunConfig cfg = cc.config_path.empty() ? RunConfig{}
                                         : parse_config_file(cc.config_path);
  for (const auto& [key, value] : cc.overrides)
    apply_setting(cfg, key, value);
  validate(cfg);
  return cfg;
}

RunOptions options_for(const RunConfig& cfg, Formulation f) {
  RunOptions opt;
  opt.formulation = f;
  opt.form = cfg.form;
  opt.backend = cfg.backend;
  opt.control = cfg.control;
  opt.cadence = cfg.cadence;
  return opt;
}

void print_summary(const RunResult& res, const char* label) {
  const DiagnosticsRecord& first = res.traj.records.front();
  const DiagnosticsRecord& last = res.traj.records.back();
  std::printf("%s: %s after %ld steps, t = %.6g\n", label,
              res.status == RunStatus::ok       ? "completed"
              : res.status == RunStatus::vacuum ? "halted (vacuum)"
                                                : "halted (blowup)",
              res.steps, res.t_final);
  if (!res.message.empty()) std::printf("  %s\n", res.message.c_str());
  std::printf("  mass   %.17e -> %.17e\n", first.mass, last.mass);
  std::printf("  energy %.17e -> %.17e\n", first.energy, last.energy);
  std::printf("  min_rho %.6e  max_speed %.6e\n", last.min_rho,
              last.max_speed);
}

int status_code(RunStatus s) { return s == RunStatus::ok ? 0 : 3; }

int cmd_run_single(const RunConfig& cfg, Formulation f) {
  const Grid g = make_grid(cfg.dim, cfg.n, cfg.length);
  const FluidState initial = make_initial_state(g, cfg.initial);
  const RunResult res = run(initial, cfg.params, options_for(cfg, f));

  print_summary(res, f == Formulation::original ? "original" : "effective");
  if (!cfg.csv_path.empty()) {
    write_csv(res.traj, cfg.csv_path);
    std::printf("  wrote %zu records to %s\n", res.traj.records.size(),
                cfg.csv_path.c_str());
  }
  if (!cfg.checkpoint_path.empty() && res.status == RunStatus::ok) {
    Checkpoint c;
    c.grid = g;
    c.rho = res.final_state.rho;
    c.mom = res.final_state.mom;
    c.t = res.t_final;
    c.params = cfg.params;
    c.formulation = f == Formulation::original ? "original" : "effective";
    write_checkpoint(c, cfg.checkpoint_path);
    std::printf("  wrote checkpoint to %s\n", cfg.checkpoint_path.c_str());
  }
  return status_code(res.status);
}

struct FormulationDiff {
  int n = 0;
  double rho_inf = 0.0;
  double mom_inf = 0.0;
};

FormulationDiff compare_at(const RunConfig& cfg, int n) {
  RunConfig local = cfg;
  local.n = n;
  const Grid g = make_grid(local.dim, local.n, local.length);
  const FluidState initial = make_initial_state(g, local.initial);

  const RunResult orig =
      run(initial, local.params, options_for(local, Formulation::original));
  const RunResult eff =
      run(initial, local.params, options_for(local, Formulation::effective));
  if (orig.status != RunStatus::ok)
    throw Error("original run did not complete: " + orig.message);
  if (eff.status != RunStatus::ok)
    throw Error("effective run did not complete: " + eff.message);

  FormulationDiff d;
  d.n = n;
  d.rho_inf = max_abs(sub(orig.final_state.rho, eff.final_state.rho));
  for (int a = 0; a < g.dim; ++a)
    d.mom_inf = std::max(
        d.mom_inf,
        max_abs(sub(orig.final_state.mom.comp[a], eff.final_state.mom.comp[a])));
  return d;
}

int cmd_compare(const RunConfig& cfg, int levels) {
  if (!(cfg.params.kappa > 0.0 && cfg.params.kappa < cfg.params.nu))
    throw ConfigError("key 'kappa': comparing formulations needs 0 < kappa < nu",
                      0, "kappa");
  std::printf("# n  rho_diff_inf  mom_diff_inf  (t_end = %g, %s)\n",
              cfg.control.t_end, backend_name(cfg.backend).c_str());
  std::vector<FormulationDiff> diffs;
  for (int l = 0, n = cfg.n; l < levels; ++l, n *= 2)
    diffs.push_back(compare_at(cfg, n));
  for (const FormulationDiff& d : diffs)
    std::printf("%6d  %.17e  %.17e\n", d.n, d.rho_inf, d.mom_inf);
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    const double ratio = diffs[i - 1].rho_inf / std::max(diffs[i].rho_inf,
                                                         1e-300);
    std::printf("# order(n=%d -> n=%d): %.3f\n", diffs[i - 1].n, diffs[i].n,
                std::log2(ratio));
  }
  return 0;
}

int cmd_check_identities(const RunConfig& cfg) {
  const Grid g = make_grid(cfg.dim, cfg.n, cfg.length);
  const FluidState s = make_initial_state(g, cfg.initial);

  const VectorField fp = bohm_force(s.rho, BohmForm::pressure_form,
                                    cfg.backend, cfg.control.floor);
  const VectorField fl = bohm_force(s.rho, BohmForm::log_hessian_form,
                                    cfg.backend, cfg.control.floor);
  const VectorField fw = bohm_force(s.rho, BohmForm::wave_form, cfg.backend,
                                    cfg.control.floor);
  auto diff = [&](const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int d = 0; d < g.dim; ++d)
      m = std::max(m, max_abs(sub(a.comp[d], b.comp[d])));
    return m;
  };
  std::printf("bohm pressure_form vs log_hessian_form : %.17e\n", diff(fp, fl));
  std::printf("bohm pressure_form vs wave_form        : %.17e\n", diff(fp, fw));
  std::printf("bohm log_hessian_form vs wave_form     : %.17e\n", diff(fl, fw));

  if (cfg.params.kappa > 0.0 && cfg.params.kappa < cfg.params.nu) {
    const EffectiveParams eff =
        effective_params(cfg.params.nu, cfg.params.kappa);
    const TransformResiduals r =
        transform_identity_residuals(s, cfg.params, eff, cfg.form, cfg.backend);
    std::printf("transform momentum_shift residual      : %.17e\n",
                r.momentum_shift);
    std::printf("transform log_density_tensor residual  : %.17e\n",
                r.log_density_tensor);
    std::printf("transform end_to_end residual          : %.17e\n",
                r.end_to_end);
  } else {
    std::printf("transform residuals skipped (requires 0 < kappa < nu)\n");
  }
  return 0;
}

int cmd_check_params(double nu, double kappa) {
  const EffectiveParams eff = effective_params(nu, kappa);
  const double sum_res = std::abs(eff.mu + eff.lambda - nu);
  const double kappa_res =
      std::abs(kappa * kappa - 2.0 * nu * eff.mu + eff.mu * eff.mu);
  std::printf("mu=%g lambda=%g\n", eff.mu, eff.lambda);
  std::printf("residual |mu+lambda-nu|        : %.3e\n", sum_res);
  std::printf("residual |kappa^2-2*nu*mu+mu^2|: %.3e\n", kappa_res);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Navier-Stokes laboratory"};
  app.require_subcommand(1);

  ConfigCli run_cc, cmp_cc, id_cc;
  int cmp_levels = 3;
  double cp_nu = 0.0, cp_kappa = 0.0;

  CLI::App* c_run = app.add_subcommand("run", "advance a configured run");
  add_config_options(*c_run, run_cc);

  CLI::App* c_cmp = app.add_subcommand(
      "compare-formulations",
      "paired original/effective runs over a doubling resolution sequence");
  add_config_options(*c_cmp, cmp_cc);
  c_cmp->add_option("--levels", cmp_levels,
                    "number of resolutions (n, 2n, 4n, ...)");

  CLI::App* c_id = app.add_subcommand(
      "check-identities", "Bohm-form and transform identity residuals");
  add_config_options(*c_id, id_cc);

  CLI::App* c_cp =
      app.add_subcommand("check-params", "effective coefficients for (nu, kappa)");
  c_cp->add_option("nu", cp_nu, "viscosity")->required();
  c_cp->add_option("kappa", cp_kappa, "dispersive coefficient")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) {
      const RunConfig cfg = load_config(run_cc);
      if (cfg.formulation == FormulationMode::both)
        return cmd_compare(cfg, cmp_levels);
      return cmd_run_single(cfg,
                            cfg.formulation == FormulationMode::effective
                                ? Formulation::effective
                                : Formulation::original);
    }
    if (c_cmp->parsed()) return cmd_compare(load_config(cmp_cc), cmp_levels);
    if (c_id->parsed()) return cmd_check_identities(load_config(id_cc));
    if (c_cp->parsed()) return cmd_check_params(cp_nu, cp_kappa);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const VacuumReached& e) {
    std::cerr << "vacuum: " << e.what() << "\n";
    return 3;
  } catch (const NumericalBlowup& e) {
    std::cerr << "blowup: " << e.what() << "\n";
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
