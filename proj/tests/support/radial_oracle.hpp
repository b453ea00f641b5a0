#pragma once

// Independent 1-D radial reduction of the massless ground-state problem:
// the same stabilized fixed point iterated on r*u(r) with a discrete sine
// transform (hard wall at r = R) and Newton-shell cumulative sums for the
// Coulomb potential. Shares no code or discretization with the 3-D path.

#include <vector>

namespace prh::testing {

struct RadialGroundState {
  std::vector<double> r;
  std::vector<double> u;
  double mass = 0;        // 4 pi int r^2 u^2
  double riesz_half = 0;  // <sqrt(-Lap) u, u>
  double hartree = 0;     // int ((1/|x|) * u^2) u^2
  double residual = 0;
  int iterations = 0;

  /// 4 pi int r^{2+p} u^2 dr
  double weighted_moment(double p) const;
};

RadialGroundState solve_radial_ground_state(int points = 4096,
                                            double radius = 200.0,
                                            double tol = 1e-11,
                                            int max_iter = 400);

}  // namespace prh::testing
