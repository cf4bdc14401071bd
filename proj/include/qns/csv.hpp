#pragma once

#include <string>
#include <vector>

#include "qns/diagnostics.hpp"

namespace qns {

/// Column names, one per DiagnosticsRecord field, in emission order.
const std::vector<std::string>& csv_columns();

/// One header row plus one row per record, comma-separated, 17 significant
/// digits scientific notation, newline-terminated.
void write_csv(const Trajectory& traj, const std::string& path);

std::string csv_text(const Trajectory& traj);

}  // namespace qns
