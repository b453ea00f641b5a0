#pragma once

#include <utility>
#include <vector>

#include "prh/energy.hpp"
#include "prh/ground_state.hpp"

namespace prh {

/// C-infinity step: 1 for t <= delta, 0 for t >= 2*delta.
double smooth_cutoff(double t, double delta);

/// Unit-mass concentrating trial state
///   U_R(x) = A_R R^{3/2} / ||Q||_2 * cutoff(|x - x0|) Q(R (x - x0)).
/// `field` is the sample on the requested grid; `scaled` holds the
/// R-independent-resolution representation cutoff(y/R) Q(y) on the ground
/// state's own grid, which is what energies are evaluated on (the change
/// of variables is exact for every term).
struct TrialState {
  Field field;
  Field scaled;
  double R = 0;
  Vec3 x0{0, 0, 0};
  double A_R2 = 0;  ///< normalization excess, >= 1, -> 1 + O(R^{-5})
  double delta = 0;
  double astar = 0;
};

/// Builds the trial state. Requires R >= 1 and the 2*delta cutoff ball
/// (around x0) inside the sampling box.
TrialState trial_state(double R, const Vec3& x0, double delta,
                       const QState& q, const Grid& grid);

/// Energy of U_R, evaluated through the exact rescaling identities on the
/// ground-state grid (the kinetic symbol scales to sqrt(xi^2 + m^2/R^2),
/// the Hartree and potential terms pick up the matching powers of R).
EnergyBreakdown trial_energy(double a, double m, const PotentialSpec& spec,
                             const TrialState& trial);

struct DescentReport {
  std::vector<double> R_values;
  std::vector<EnergyBreakdown> energies;
  double coefficient = 0;  ///< least-squares slope of total vs R
  double intercept = 0;
  double a = 0;
};

/// Probes nonexistence at or above the critical coupling: tabulates
/// E_a(U_R) over R_values at a flattest trap point and fits the linear-in-R
/// descent coefficient, which is proportional to (1 - a/astar).
/// Requires a >= 0.999 * astar.
DescentReport nonexistence_probe(double a, double m,
                                 const PotentialSpec& spec,
                                 std::span<const double> R_values,
                                 const QState& q, double delta = 2.0);

/// (E_a(u), E_a(|u|)); the second never exceeds the first.
std::pair<EnergyBreakdown, EnergyBreakdown> abs_comparison(
    const Field& u, double a, double m, const PotentialSpec& spec);

}  // namespace prh
