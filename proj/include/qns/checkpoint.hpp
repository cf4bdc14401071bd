#pragma once

#include <string>

#include "qns/model.hpp"

namespace qns {

/// On-disk state snapshot. One ASCII header line
///   QNS1 <dim> <n> <length> <gamma> <nu> <kappa> <t> <formulation>
/// then raw little-endian IEEE-754 doubles: rho (row-major), then each
/// momentum component in axis order. Byte layout is fixed regardless of host
/// endianness.
struct Checkpoint {
  Grid grid;
  ScalarField rho;
  VectorField mom;
  double t = 0.0;
  PhysParams params;
  std::string formulation = "original";
};

void write_checkpoint(const Checkpoint& c, const std::string& path);
Checkpoint read_checkpoint(const std::string& path);

/// Read and check the stored shape against an expected grid; throws
/// FormatError on mismatch.
Checkpoint read_checkpoint(const std::string& path, const Grid& expected);

}  // namespace qns
