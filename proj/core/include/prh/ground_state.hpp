#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "prh/field.hpp"
#include "prh/radial_profile.hpp"

namespace prh {

/// Computed ground state of sqrt(-Lap) q + q = ((1/|x|) * q^2) q, with the
/// diagnostics that certify it. Its squared L2 norm is the critical
/// coupling.
struct QState {
  Field q;
  double astar = 0;         ///< mass(q)
  double kinetic_half = 0;  ///< riesz_form(q, 1/2)
  double hartree = 0;       ///< hartree_term(q)
  /// {2*kinetic_half/hartree, hartree/(2*astar)}; both 1 for exact states.
  std::array<double, 2> pohozaev_ratios{0, 0};
  double decay_slope = 0;   ///< fitted log-log tail slope
  double residual = 0;      ///< fixed-point equation residual, L2
  int iterations = 0;
  double boundary_ratio = 0;
  std::vector<double> residual_tail;  ///< last accepted residuals
  RadialProfile profile;
};

struct SolveOptions {
  double tol = 1e-9;
  int max_iter = 600;
};

/// Computes the ground state by the stabilized fixed-point iteration
///   u <- M^{3/2} (sqrt(-Lap) + 1)^{-1} [((1/|x|) * u^2) u],
///   M = <(sqrt(-Lap) + 1) u, u> / <((1/|x|) * u^2) u, u>,
/// started from a centered Gaussian. Stops when the equation residual
/// drops below tol; throws ConvergenceError on stagnation, iteration
/// exhaustion, or collapse to zero.
QState solve_q(const Grid& grid, const SolveOptions& opts = {});

/// The critical coupling: mass(q) under the same quadrature.
double astar(const QState& q);

/// Least-squares slope of log(shell-averaged f) vs log r over [r_lo, r_hi].
/// The window must lie inside [0.3 L, 0.7 L].
double tail_slope(const Field& f, double r_lo, double r_hi);
double decay_report(const QState& q, double r_lo, double r_hi);

/// Quadrature of |x|^p q^2 about the box center. Supported for
/// p in (0, 5/2]; throws std::invalid_argument outside that range.
double weighted_moment(const QState& q, double p);

/// Concentration scale mu = (p * kappa * weighted_moment(q, p))^{1/(p+1)}.
/// Requires finite positive kappa.
double mu_predicted(double kappa, double p, const QState& q);

struct CertThresholds {
  double pohozaev_tol = 1e-3;
  double slope_lo = -4.5;
  double slope_hi = -3.5;
  double residual_tol = 1e-6;
  double monotone_slack = 1e-8;
};

struct Certification {
  bool positive = false;
  bool monotone_radial = false;
  bool pohozaev_ok = false;
  bool slope_ok = false;
  bool residual_ok = false;
  bool ok() const {
    return positive && monotone_radial && pohozaev_ok && slope_ok &&
           residual_ok;
  }
};

Certification certify(const QState& q, const CertThresholds& thr = {});

/// Persists q as <prefix>.field plus a JSON metadata sidecar
/// <prefix>.json (astar, ratios, slope, residual, grid, ...).
void save_qstate(const std::filesystem::path& prefix, const QState& q);
QState load_qstate(const std::filesystem::path& prefix);

}  // namespace prh
