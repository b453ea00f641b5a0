#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "prh/grid.hpp"

namespace prh {

/// Run configuration parsed from a flat sectioned key-value file.
/// Physical parameters (m, couplings, tolerances) are always explicit in
/// the file; only output locations carry defaults. Couplings are given as
/// fractions of the critical value and resolved against the loaded ground
/// state, so configs stay valid across grid refinements.
struct RunConfig {
  // [grid]
  int n = 0;
  double L = 0;

  // [physics]
  double m = 0;
  std::vector<double> a_fractions;

  // [potential]
  std::vector<Vec3> trap_points;
  std::vector<double> trap_exponents;

  // [solver]
  double tol = 0;
  int max_iter = 0;
  double tau0 = 0;  ///< 0 = "auto"

  // [outputs]
  std::string directory = "out";
  bool dump_fields = false;

  // [inputs]
  std::string qstate;  ///< prefix of a persisted ground state

  // [trial]
  std::vector<double> R_values;
  double delta = 0;

  // [sweep]
  double box_scale = 0;  ///< 0 = fixed box
  double L_min = 0;

  // [analyze]
  double fit_lo = 0.8;  ///< fit window, fractions of astar
  double fit_hi = 0.98;
  double profile_box = 0;   ///< target half-length for rescaling (0 = auto)
  int profile_n = 0;        ///< target grid (0 = grid n)
};

/// Parses and validates. Throws ConfigError with a line-numbered message.
RunConfig parse_config(const std::filesystem::path& path);

/// Validation shared with parse_config; throws ConfigError. Checks trap
/// points against the box margin and coupling fractions against [0, 2].
void validate_config(const RunConfig& cfg);

}  // namespace prh
