#pragma once

#include "prh/config.hpp"

namespace prh {

// Exit codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitCertification = 4;

/// Solves the ground state on the configured grid, persists
/// <dir>/qstate.{field,json} and returns kExitOk or kExitCertification.
int run_ground_state(const RunConfig& cfg);

/// Single constrained solve at the first configured coupling fraction.
int run_minimize(const RunConfig& cfg);

/// Warm-started sweep over all configured fractions; rows are appended to
/// <dir>/sweep.csv as they complete and <dir>/checkpoint.field always holds
/// the last minimizer, so an interrupted sweep resumes exactly.
int run_sweep(const RunConfig& cfg, bool resume);

/// Scaling fits and (when field dumps exist) rescaled-profile comparisons.
int run_analyze(const RunConfig& cfg);

/// Trial-state descent table at/above the critical coupling.
int run_nonexistence(const RunConfig& cfg);

/// Trial-state energy table at one coupling.
int run_trial_energy(const RunConfig& cfg);

}  // namespace prh
