#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "prh/energy.hpp"
#include "prh/field.hpp"
#include "prh/potential.hpp"

namespace prh {

struct MinimizerResult {
  Field u;  ///< nonnegative unit-mass minimizer
  EnergyBreakdown breakdown;
  double e_a = 0;
  double mu_a = 0;  ///< Lagrange multiplier <G, u>
  double a = 0;
  double mass_param = 0;
  int iterations = 0;
  double residual = 0;  ///< ||G - <G,u> u||_2 at the final state
  double min_value = 0;
  double boundary_ratio = 0;
  std::vector<double> energy_trace;  ///< energy at accepted steps (tail)
};

struct MinimizeOptions {
  double tol = 1e-6;
  int max_iter = 20000;
  double tau0 = 0;  ///< initial step; <= 0 means 0.1 / max lattice symbol
};

/// Minimizes E_a over the unit-mass sphere by projected gradient descent
/// with backtracking (energy strictly non-increasing across accepted
/// steps) and Barzilai-Borwein step proposals. Requires
/// 0 <= a < 0.995 * astar_ref; refuses values beyond the guard band since
/// no minimizer exists at or above the critical coupling.
MinimizerResult minimize(double a, double m, const PotentialSpec& spec,
                         const Grid& grid, const Field* init,
                         double astar_ref, const MinimizeOptions& opts = {});

struct SweepEntry {
  double a = 0;
  Grid grid;
  MinimizerResult result;
};

struct SweepOptions {
  MinimizeOptions solve;
  /// When > 0, entry boxes shrink with the collapse scale:
  /// L(a) = clamp(box_scale * (astar - a)^{1/(p+1)}, L_min, base L).
  double box_scale = 0;
  double L_min = 0;
  /// Entries already done (resume support): sweep starts after them.
  int skip = 0;
  std::optional<Field> warm_start;  ///< state to continue from when skipping
};

/// Ascending-coupling continuation: each solve is warm-started from the
/// previous minimizer, rescaled between boxes by the ratio of collapse
/// scales. on_entry runs after each solve (persistence hook).
std::vector<SweepEntry> sweep(
    std::span<const double> a_values, double m, const PotentialSpec& spec,
    const Grid& base_grid, double astar_ref, const SweepOptions& opts = {},
    const std::function<void(const SweepEntry&, std::size_t)>& on_entry = {});

/// One row of the persisted sweep table.
struct SweepRow {
  double a = 0, e_a = 0, kinetic = 0, potential = 0, hartree = 0, mu_a = 0,
         residual = 0;
  int iterations = 0;
};

SweepRow to_row(const SweepEntry& e);

/// CSV schema: a,e_a,kinetic,potential,hartree,mu_a,residual,iterations
/// (one header line; %.17g floats so values round-trip exactly).
void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

}  // namespace prh
