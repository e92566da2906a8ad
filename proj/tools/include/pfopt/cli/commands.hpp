#pragma once

#include "pfopt/cli/config.hpp"

namespace pfopt::cli {

/// Runs one command: builds every artifact in a staging directory, writes
/// the manifest, then commits the staging directory over `out` (so failed
/// runs never leave partial output). Throws ConfigError / DataError /
/// SolverEscalation; returns 0 on success.
int run_command(const RunConfig& config);

}  // namespace pfopt::cli
