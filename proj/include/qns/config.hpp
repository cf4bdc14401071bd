#pragma once

#include <string>
#include <vector>

#include "qns/initial_data.hpp"
#include "qns/timeint.hpp"

namespace qns {

enum class FormulationMode { original, effective, both };

/// Everything a run needs, parsed from `key = value` text.
struct RunConfig {
  int dim = 1;
  int n = 128;
  double length = 6.283185307179586476925286766559;
  DiffBackend backend = DiffBackend::spectral;

  PhysParams params;
  FormulationMode formulation = FormulationMode::original;
  BohmForm form = BohmForm::wave_form;

  InitialData initial;

  StepControl control;
  double cadence = 0.01;
  bool mv_monitor = true;

  std::string csv_path;
  std::string checkpoint_path;
};

/// Line-oriented `key = value`; `#` starts a comment; unknown keys are
/// rejected. Throws ConfigError with the line number and offending key.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Apply one override (same key names as the file format).
void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value, int line = 0);

/// Re-validates every module precondition; throws ConfigError.
void validate(const RunConfig& cfg);

/// Key names accepted by the config format / CLI overrides, in order.
const std::vector<std::string>& config_keys();

}  // namespace qns
