#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qns {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGrid : Error {
  using Error::Error;
};

/// Density dropped below the floor; the state is no longer usable for
/// velocity derivation or any balance diagnostic.
struct VacuumReached : Error {
  double t = 0.0;
  std::size_t cell = 0;
  explicit VacuumReached(const std::string& msg) : Error(msg) {}
  VacuumReached(const std::string& msg, double t_, std::size_t cell_)
      : Error(msg), t(t_), cell(cell_) {}
};

struct NumericalBlowup : Error {
  double t = 0.0;
  explicit NumericalBlowup(const std::string& msg) : Error(msg) {}
  NumericalBlowup(const std::string& msg, double t_) : Error(msg), t(t_) {}
};

struct RegimeViolation : Error {
  using Error::Error;
};

struct ConfigError : Error {
  int line = 0;
  std::string key;
  explicit ConfigError(const std::string& msg) : Error(msg) {}
  ConfigError(const std::string& msg, int line_, std::string key_)
      : Error(msg), line(line_), key(std::move(key_)) {}
};

struct FormatError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct InsufficientSamples : Error {
  using Error::Error;
};

}  // namespace qns
