#include "prh/trial.hpp"

#include <cmath>
#include <stdexcept>

#include "prh/coulomb.hpp"
#include "prh/reductions.hpp"
#include "prh/spectral_ops.hpp"

namespace prh {

double smooth_cutoff(double t, double delta) {
  if (t <= delta) return 1.0;
  if (t >= 2 * delta) return 0.0;
  const double s = (t - delta) / delta;  // in (0, 1)
  const auto f = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = f(1.0 - s), b = f(s);
  return a / (a + b);
}

TrialState trial_state(double R, const Vec3& x0, double delta,
                       const QState& q, const Grid& grid) {
  if (!(R >= 1)) throw std::invalid_argument("trial_state: need R >= 1");
  for (double c : x0) {
    if (std::abs(c) + 2 * delta > grid.L) {
      throw std::invalid_argument(
          "trial_state: cutoff support exceeds the box");
    }
  }

  TrialState t;
  t.R = R;
  t.x0 = x0;
  t.delta = delta;
  t.astar = q.astar;

  // R-independent-resolution representation on the ground state's grid:
  // cutoff(|y|/R) Q(y). Dividing the cut mass by the uncut mass keeps the
  // normalization excess >= 1 exactly (the cutoff only removes mass).
  const Grid& qg = q.q.grid;
  t.scaled = Field(qg);
  Field uncut = q.q;
  const int n = qg.n;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double y1 = qg.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y2 = qg.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        const double y3 = qg.coord(k);
        const double r = std::sqrt(y1 * y1 + y2 * y2 + y3 * y3);
        t.scaled.values[idx] =
            smooth_cutoff(r / R, delta) * q.q.values[idx];
      }
    }
  }
  const double mass_cut = mass(t.scaled);
  const double mass_uncut = mass(uncut);
  t.A_R2 = mass_uncut / mass_cut;

  // sample U_R on the requested grid through the radial profile
  const double amp = std::sqrt(t.A_R2) * std::pow(R, 1.5) / std::sqrt(q.astar);
  t.field = sample(grid, [&](double x, double y, double z) {
    const double d1 = x - x0[0], d2 = y - x0[1], d3 = z - x0[2];
    const double r = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
    return amp * smooth_cutoff(r, delta) * q.profile(R * r);
  });
  const double mf = mass(t.field);
  if (mf > 0) normalize(t.field);
  return t;
}

EnergyBreakdown trial_energy(double a, double m, const PotentialSpec& spec,
                             const TrialState& trial) {
  const Grid& qg = trial.scaled.grid;
  const double R = trial.R;
  const double norm2 = trial.A_R2 / trial.astar;  // A_R^2 / ||Q||^2

  EnergyBreakdown b;
  b.coupling = a;
  b.mass_param = m;

  // kinetic: <U_R, sqrt(-Lap + m^2) U_R> = norm2 * R * <g, sqrt(-Lap +
  // (m/R)^2) g> with g the scaled representation.
  b.kinetic = norm2 * R * kinetic_form(trial.scaled, m / R);

  // hartree: one power of R and two of the squared normalization
  b.hartree = norm2 * norm2 * R * hartree_term(trial.scaled);

  // potential: <V U_R^2> = norm2 * int V(y/R + x0) g(y)^2 dy
  const double h = qg.spacing();
  const int n = qg.n;
  std::vector<double> Vterm(qg.size());
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double y1 = qg.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y2 = qg.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        const Vec3 x{y1 / R + trial.x0[0], y2 / R + trial.x0[1],
                     qg.coord(k) / R + trial.x0[2]};
        const double g = trial.scaled.values[idx];
        Vterm[idx] = potential_value(spec, x) * g * g;
      }
    }
  }
  b.potential = norm2 * h * h * h *
                pairwise_sum(std::size_t{0}, Vterm.size(),
                             [&](std::size_t i) { return Vterm[i]; });

  b.total = b.kinetic + b.potential - 0.5 * a * b.hartree;
  return b;
}

DescentReport nonexistence_probe(double a, double m,
                                 const PotentialSpec& spec,
                                 std::span<const double> R_values,
                                 const QState& q, double delta) {
  if (!(a >= 0.999 * q.astar)) {
    throw std::invalid_argument(
        "nonexistence_probe: requires a >= 0.999 a* (the sub-critical "
        "regime has minimizers)");
  }
  if (R_values.size() < 2) {
    throw std::invalid_argument("nonexistence_probe: need >= 2 R values");
  }
  const Vec3 x0 = spec.points[spec.flattest.front()];

  DescentReport rep;
  rep.a = a;
  const Grid sample_grid = q.q.grid;
  for (double R : R_values) {
    TrialState t = trial_state(R, x0, delta, q, sample_grid);
    rep.R_values.push_back(R);
    rep.energies.push_back(trial_energy(a, m, spec, t));
  }
  // least-squares slope of total energy vs R
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto N = static_cast<double>(rep.R_values.size());
  for (std::size_t i = 0; i < rep.R_values.size(); ++i) {
    sx += rep.R_values[i];
    sy += rep.energies[i].total;
    sxx += rep.R_values[i] * rep.R_values[i];
    sxy += rep.R_values[i] * rep.energies[i].total;
  }
  rep.coefficient = (N * sxy - sx * sy) / (N * sxx - sx * sx);
  rep.intercept = (sy - rep.coefficient * sx) / N;
  return rep;
}

std::pair<EnergyBreakdown, EnergyBreakdown> abs_comparison(
    const Field& u, double a, double m, const PotentialSpec& spec) {
  Field au = u;
  for (double& v : au.values) v = std::abs(v);
  return {total_energy(u, a, m, spec, false),
          total_energy(au, a, m, spec, false)};
}

}  // namespace prh
