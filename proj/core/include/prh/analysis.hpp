#pragma once

#include <filesystem>
#include <vector>

#include "prh/field.hpp"
#include "prh/ground_state.hpp"
#include "prh/minimize.hpp"
#include "prh/potential.hpp"

namespace prh {

/// Collapse scale lambda = (astar - a)^{1/(p+1)}.
double collapse_scale(double a, double astar, double p);

/// Blow-up rescaling w(x) = lambda^{3/2} u_a(lambda x + x_j) onto
/// target_grid by spectral interpolation. Mass-preserving up to
/// interpolation error. Throws when the rescaled window leaves the
/// source box.
Field rescale(const Field& u_a, double a, double astar, double p,
              const Vec3& x_j, const Grid& target_grid);

struct ConcentrationPick {
  int index = -1;
  Vec3 point{0, 0, 0};
  double mass_fraction = 0;
};

/// The trap point whose ball of radius 10*lambda captures the largest mass
/// fraction. Throws std::runtime_error (not yet concentrated) when no ball
/// captures at least half the mass.
ConcentrationPick concentration_point(const Field& u_a,
                                      const PotentialSpec& spec,
                                      double lambda);

struct ProfileComparison {
  double l2_distance = 0;
  Vec3 shift{0, 0, 0};  ///< fitted translation of the reference
  double mu_used = 0;
  double mass_w = 0;
};

/// L2 distance between w and the collapse profile
/// mu^{3/2} Q(mu (x - y)) / ||Q||_2, minimized over the translation y via
/// the cross-correlation peak plus sub-grid refinement.
ProfileComparison profile_distance(const Field& w, const QState& q,
                                   double mu);

struct ScalingPoint {
  double a = 0;
  double gap = 0;  ///< astar - a
  double e_a = 0;
  double hartree = 0;
  double residual = 0;
  bool used = false;
};

struct ScalingReport {
  double energy_exponent = 0;
  double energy_exponent_stderr = 0;
  double hartree_exponent = 0;
  double hartree_exponent_stderr = 0;
  double energy_prefactor = 0;
  double predicted_prefactor = 0;  ///< ((p+1)/p) * mu / astar
  std::vector<ScalingPoint> points;
};

/// Log-log least-squares fits of e(a) and of the Hartree term against
/// astar - a. Points with residual above resid_tol are excluded and
/// reported; at least 5 usable points are required.
ScalingReport fit_scaling(std::span<const SweepRow> rows, double astar,
                          const PotentialSpec& spec, const QState& q,
                          double resid_tol);

/// Quadrature of (|x + offset|^p - |x|^p) q^2: nonnegative, zero only at
/// offset = 0. The offset must stay within the box margin L/4.
double symmetry_gap(const QState& q, const Vec3& offset, double p);

void save_scaling_report(const std::filesystem::path& path,
                         const ScalingReport& r);
ScalingReport load_scaling_report(const std::filesystem::path& path);

}  // namespace prh
