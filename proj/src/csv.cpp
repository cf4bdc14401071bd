#include "qns/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qns/errors.hpp"

namespace qns {

namespace {

void append_fields(const DiagnosticsRecord& r, std::vector<double>& out) {
  out.push_back(r.t);
  out.push_back(r.mass);
  out.push_back(r.energy);
  out.push_back(r.energy_dissipation);
  out.push_back(r.bd_functional);
  out.push_back(r.bd_dissipation);
  out.push_back(r.mv_functional);
  for (double x : r.mv_lhs) out.push_back(x);
  for (double x : r.mv_rhs) out.push_back(x);
  out.push_back(r.norms.sqrt_rho_u_l2);
  out.push_back(r.norms.grad_sqrt_rho_l2);
  out.push_back(r.norms.rho_l1);
  out.push_back(r.norms.rho_lgamma);
  out.push_back(r.norms.sqrt_rho_grad_vel_l2);
  out.push_back(r.norms.grad_rho_gamma_half_l2);
  out.push_back(r.norms.hess_sqrt_rho_l2);
  out.push_back(r.norms.pressure_l53);
  out.push_back(r.min_rho);
  out.push_back(r.max_speed);
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "t",
      "mass",
      "energy",
      "energy_dissipation",
      "bd_functional",
      "bd_dissipation",
      "mv_functional",
      "mv_lhs_0",
      "mv_lhs_1",
      "mv_lhs_2",
      "mv_lhs_3",
      "mv_lhs_4",
      "mv_rhs_0",
      "mv_rhs_1",
      "mv_rhs_2",
      "sqrt_rho_u_l2",
      "grad_sqrt_rho_l2",
      "rho_l1",
      "rho_lgamma",
      "sqrt_rho_grad_vel_l2",
      "grad_rho_gamma_half_l2",
      "hess_sqrt_rho_l2",
      "pressure_l53",
      "min_rho",
      "max_speed",
  };
  return cols;
}

std::string csv_text(const Trajectory& traj) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    out << (i ? "," : "") << cols[i];
  out << '\n';

  std::vector<double> row;
  char buf[32];
  for (const DiagnosticsRecord& r : traj.records) {
    row.clear();
    append_fields(r, row);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17e", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << csv_text(traj);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace qns
