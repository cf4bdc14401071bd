#pragma once

#include <string>

#include "qns/model.hpp"

namespace qns {

/// Smooth, strictly positive trigonometric initial data. All profiles vary
/// along the first axis (shear along the second), so they are exactly
/// representable on the spectral backend in every dimension.
struct InitialData {
  enum class DensityFamily { cosine, near_vacuum };
  enum class VelocityFamily { zero, sine, shear };

  DensityFamily density = DensityFamily::cosine;
  double rho_mean = 1.0;  ///< near_vacuum: the minimum density instead
  double rho_amp = 0.1;
  int wavenumber = 1;

  VelocityFamily velocity = VelocityFamily::zero;
  double u_amp = 0.0;
  int u_wavenumber = 1;
};

InitialData::DensityFamily parse_density_family(const std::string& name);
InitialData::VelocityFamily parse_velocity_family(const std::string& name);

/// Throws ConfigError on non-positive profiles (strict positivity required).
void validate(const InitialData& d);

FluidState make_initial_state(const Grid& g, const InitialData& d);

}  // namespace qns
