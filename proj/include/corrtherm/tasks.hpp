#ifndef CORRTHERM_TASKS_HPP
#define CORRTHERM_TASKS_HPP

#include <json.hpp>

#include "corrtherm/config.hpp"

namespace corrtherm {

/// Run manifest: resolved config, version, wall clock, per-task summary
/// values and pass/fail flags of the built-in checks.
struct RunManifest {
  nlohmann::json resolved;
  nlohmann::json summary;
  nlohmann::json checks;
  double wall_seconds = 0.0;
  int exit_code = 0;
};

/// Dispatches the configured task, writes CSV/JSON artifacts and the manifest
/// into cfg.out_dir. Exit code: 0 ok, 2 check failure, 3 resource, 4 config.
RunManifest run(const ExperimentConfig& cfg);

/// 17-significant-digit CSV field ('.' decimal separator, RFC-4180 rows).
std::string csv_number(double v);

}  // namespace corrtherm

#endif
