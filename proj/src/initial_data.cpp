#include "qns/initial_data.hpp"

#include <cmath>

namespace qns {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

InitialData::DensityFamily parse_density_family(const std::string& name) {
  if (name == "cosine") return InitialData::DensityFamily::cosine;
  if (name == "near_vacuum") return InitialData::DensityFamily::near_vacuum;
  throw ConfigError("unknown density family: " + name);
}

InitialData::VelocityFamily parse_velocity_family(const std::string& name) {
  if (name == "zero") return InitialData::VelocityFamily::zero;
  if (name == "sine") return InitialData::VelocityFamily::sine;
  if (name == "shear") return InitialData::VelocityFamily::shear;
  throw ConfigError("unknown velocity family: " + name);
}

void validate(const InitialData& d) {
  if (!(d.rho_amp >= 0.0)) throw ConfigError("rho_amp must be >= 0");
  switch (d.density) {
    case InitialData::DensityFamily::cosine:
      if (!(d.rho_mean > d.rho_amp))
        throw ConfigError("cosine density requires rho_mean > rho_amp");
      break;
    case InitialData::DensityFamily::near_vacuum:
      if (!(d.rho_mean > 0.0))
        throw ConfigError("near_vacuum density requires rho_mean > 0");
      break;
  }
  if (d.wavenumber < 1) throw ConfigError("wavenumber must be >= 1");
  if (d.u_wavenumber < 1) throw ConfigError("u_wavenumber must be >= 1");
}

FluidState make_initial_state(const Grid& g, const InitialData& d) {
  validate(d);
  const double kx = kTwoPi * d.wavenumber / g.length;
  const double ku = kTwoPi * d.u_wavenumber / g.length;

  FluidState s(g);
  switch (d.density) {
    case InitialData::DensityFamily::cosine:
      s.rho = sample(g, [&](const std::array<double, 3>& x) {
        return d.rho_mean + d.rho_amp * std::cos(kx * x[0]);
      });
      break;
    case InitialData::DensityFamily::near_vacuum:
      // minimum rho_mean at x = 0, peak rho_mean + 4*rho_amp at x = L/2
      s.rho = sample(g, [&](const std::array<double, 3>& x) {
        const double c = 1.0 - std::cos(kx * x[0]);
        return d.rho_mean + d.rho_amp * c * c;
      });
      break;
  }

  VectorField u(g);
  switch (d.velocity) {
    case InitialData::VelocityFamily::zero:
      break;
    case InitialData::VelocityFamily::sine:
      u.comp[0] = sample(g, [&](const std::array<double, 3>& x) {
        return d.u_amp * std::sin(ku * x[0]);
      });
      break;
    case InitialData::VelocityFamily::shear: {
      const int axis = (g.dim >= 2) ? 1 : 0;
      u.comp[0] = sample(g, [&](const std::array<double, 3>& x) {
        return d.u_amp * std::sin(ku * x[axis]);
      });
      break;
    }
  }
  s.mom = mul(u, s.rho);
  return s;
}

}  // namespace qns
