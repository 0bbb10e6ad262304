#pragma once

#include <string>

#include "config.hpp"

namespace lowrank::runner {

enum ExitStatus : int { kSuccess = 0, kFailure = 1, kConfigError = 2, kNotConverged = 3 };

struct RunOutcome {
  int status = kSuccess;
  nlohmann::json summary;
};

/// Runs the configured experiment, writing CSV artifacts and manifest.json
/// into the output directory. Solver non-convergence is reported through the
/// status after all artifacts have been written.
RunOutcome run(const ExperimentConfig& config);

/// Build identifier baked in at configure time.
const char* build_id();

}  // namespace lowrank::runner
