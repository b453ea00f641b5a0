#include "prh/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "prh/coulomb.hpp"
#include "prh/errors.hpp"
#include "prh/field_io.hpp"
#include "prh/spectral_ops.hpp"

namespace prh {

namespace {

struct IterationPieces {
  Field phi;       // (1/|x|) * u^2
  Field nonlinear; // phi * u
  Field sqrt_lap;  // sqrt(-Lap) u
  double residual; // || sqrt_lap + u - nonlinear ||_2
};

IterationPieces evaluate(const Field& u,
                         std::span<const double> sqrt_symbol) {
  IterationPieces p;
  Field rho(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    rho.values[i] = u.values[i] * u.values[i];
  }
  p.phi = coulomb_convolve(rho);
  p.nonlinear = Field(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    p.nonlinear.values[i] = p.phi.values[i] * u.values[i];
  }
  p.sqrt_lap = apply_multiplier(u, sqrt_symbol);
  Field res(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    res.values[i] =
        p.sqrt_lap.values[i] + u.values[i] - p.nonlinear.values[i];
  }
  p.residual = l2_norm(res);
  return p;
}

}  // namespace

QState solve_q(const Grid& grid, const SolveOptions& opts) {
  if (!(opts.tol > 0)) {
    throw std::invalid_argument("solve_q: tol must be positive");
  }
  const auto sqrt_symbol =
      symbol_array(grid, [](double xi2) { return std::sqrt(xi2); });
  const auto resolvent_symbol = symbol_array(
      grid, [](double xi2) { return 1.0 / (std::sqrt(xi2) + 1.0); });

  Field u = sample(grid, [](double x, double y, double z) {
    return std::exp(-(x * x + y * y + z * z) / 4.0);
  });

  std::vector<double> residual_tail;
  auto push_residual = [&](double r) {
    residual_tail.push_back(r);
    if (residual_tail.size() > 16) residual_tail.erase(residual_tail.begin());
  };

  IterationPieces cur = evaluate(u, sqrt_symbol);
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    push_residual(cur.residual);
    if (cur.residual <= opts.tol) break;

    // stabilized fixed point with exponent 3/2
    const double num = inner(cur.sqrt_lap, u) + mass(u);
    const double den = inner(cur.nonlinear, u);
    if (!(den > 0)) {
      throw ConvergenceError("solve_q: nonlinear term degenerated");
    }
    const double M = num / den;
    Field base = apply_multiplier(cur.nonlinear, resolvent_symbol);
    const double gain = std::pow(M, 1.5);

    Field cand(grid);
    double omega = 1.0;
    IterationPieces next;
    for (int attempt = 0;; ++attempt) {
      for (std::size_t i = 0; i < cand.values.size(); ++i) {
        cand.values[i] = (1.0 - omega) * u.values[i] +
                         omega * gain * base.values[i];
      }
      next = evaluate(cand, sqrt_symbol);
      // safeguard: relax the update if the residual would grow
      if (next.residual <= cur.residual || attempt >= 5) break;
      omega *= 0.5;
    }
    u = std::move(cand);
    cur = std::move(next);

    if (mass(u) < 1e-8) {
      throw ConvergenceError("solve_q: iterate collapsed to zero mass");
    }
  }
  if (cur.residual > opts.tol) {
    throw ConvergenceError(
        "solve_q: no convergence after " + std::to_string(opts.max_iter) +
        " iterations (residual " + std::to_string(cur.residual) + ")");
  }

  QState q;
  q.q = std::move(u);
  q.astar = mass(q.q);
  q.kinetic_half = riesz_form(q.q, 0.5);
  Field rho(grid);
  for (std::size_t i = 0; i < rho.values.size(); ++i) {
    rho.values[i] = q.q.values[i] * q.q.values[i];
  }
  q.hartree = inner(cur.phi, rho);
  q.pohozaev_ratios = {2.0 * q.kinetic_half / q.hartree,
                       q.hartree / (2.0 * q.astar)};
  q.residual = cur.residual;
  q.iterations = it;
  q.boundary_ratio = boundary_contamination(q.q);
  q.residual_tail = std::move(residual_tail);
  q.profile = extract_radial_profile(q.q);
  q.decay_slope = tail_slope(q.q, 0.35 * grid.L, 0.65 * grid.L);
  return q;
}

double astar(const QState& q) { return q.astar; }

double tail_slope(const Field& f, double r_lo, double r_hi) {
  const double L = f.grid.L;
  if (!(r_lo >= 0.3 * L && r_hi <= 0.7 * L && r_lo < r_hi)) {
    throw std::invalid_argument(
        "tail_slope: window must lie inside [0.3 L, 0.7 L]");
  }
  // shell averages over bins of width h
  const double h = f.grid.spacing();
  const int nbins = static_cast<int>((r_hi - r_lo) / h) + 1;
  std::vector<double> sum(nbins, 0.0);
  std::vector<int> cnt(nbins, 0);
  const int n = f.grid.n;
  for (int i = 0; i < n; ++i) {
    const double x = f.grid.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = f.grid.coord(j);
      for (int k = 0; k < n; ++k) {
        const double z = f.grid.coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r < r_lo || r >= r_hi + h) continue;
        const int b = static_cast<int>((r - r_lo) / h);
        if (b < 0 || b >= nbins) continue;
        sum[b] += f(i, j, k);
        cnt[b] += 1;
      }
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int b = 0; b < nbins; ++b) {
    if (cnt[b] == 0) continue;
    const double avg = sum[b] / cnt[b];
    if (!(avg > 0)) continue;
    const double X = std::log(r_lo + (b + 0.5) * h);
    const double Y = std::log(avg);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
    ++used;
  }
  if (used < 3) {
    throw std::invalid_argument("tail_slope: too few usable shells");
  }
  return (used * sxy - sx * sy) / (used * sxx - sx * sx);
}

double decay_report(const QState& q, double r_lo, double r_hi) {
  return tail_slope(q.q, r_lo, r_hi);
}

double weighted_moment(const QState& q, double p) {
  if (!(p > 0) || p > 2.5) {
    throw std::invalid_argument(
        "weighted_moment: supported exponent range is (0, 5/2]");
  }
  const Field w = sample(q.q.grid, [p](double x, double y, double z) {
    return std::pow(x * x + y * y + z * z, 0.5 * p);
  });
  Field rho(q.q.grid);
  for (std::size_t i = 0; i < rho.values.size(); ++i) {
    rho.values[i] = q.q.values[i] * q.q.values[i];
  }
  return inner(w, rho);
}

double mu_predicted(double kappa, double p, const QState& q) {
  if (!std::isfinite(kappa) || !(kappa > 0)) {
    throw std::invalid_argument(
        "mu_predicted: flatness coefficient must be finite and positive");
  }
  return std::pow(p * kappa * weighted_moment(q, p), 1.0 / (p + 1.0));
}

Certification certify(const QState& q, const CertThresholds& thr) {
  Certification c;
  c.positive = min_value(q.q) > 0;

  // radially nonincreasing along the +x axis from the center
  c.monotone_radial = true;
  const int n = q.q.grid.n;
  const int c0 = n / 2;
  for (int i = c0; i + 1 < n; ++i) {
    if (q.q(i + 1, c0, c0) > q.q(i, c0, c0) + thr.monotone_slack) {
      c.monotone_radial = false;
      break;
    }
  }
  c.pohozaev_ok = std::abs(q.pohozaev_ratios[0] - 1.0) <= thr.pohozaev_tol &&
                  std::abs(q.pohozaev_ratios[1] - 1.0) <= thr.pohozaev_tol;
  c.slope_ok = q.decay_slope >= thr.slope_lo && q.decay_slope <= thr.slope_hi;
  c.residual_ok = q.residual <= thr.residual_tol;
  return c;
}

void save_qstate(const std::filesystem::path& prefix, const QState& q) {
  write_field(prefix.string() + ".field", q.q);
  nlohmann::json j;
  j["grid"] = {{"n", q.q.grid.n}, {"L", q.q.grid.L}};
  j["astar"] = q.astar;
  j["kinetic_half"] = q.kinetic_half;
  j["hartree"] = q.hartree;
  j["pohozaev_ratios"] = q.pohozaev_ratios;
  j["decay_slope"] = q.decay_slope;
  j["residual"] = q.residual;
  j["iterations"] = q.iterations;
  j["boundary_ratio"] = q.boundary_ratio;
  j["residual_tail"] = q.residual_tail;
  std::ofstream out(prefix.string() + ".json");
  out << j.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("cannot write " + prefix.string() + ".json");
  }
}

QState load_qstate(const std::filesystem::path& prefix) {
  QState q;
  q.q = read_field(prefix.string() + ".field");

  std::ifstream in(prefix.string() + ".json");
  if (!in) {
    throw std::runtime_error("missing sidecar " + prefix.string() + ".json");
  }
  nlohmann::json j;
  in >> j;
  q.astar = j.at("astar");
  q.kinetic_half = j.at("kinetic_half");
  q.hartree = j.at("hartree");
  q.pohozaev_ratios = {j.at("pohozaev_ratios")[0], j.at("pohozaev_ratios")[1]};
  q.decay_slope = j.at("decay_slope");
  q.residual = j.at("residual");
  q.iterations = j.at("iterations");
  q.boundary_ratio = j.at("boundary_ratio");
  q.residual_tail = j.at("residual_tail").get<std::vector<double>>();

  // integrity: the dump must reproduce the recorded mass
  const double m = mass(q.q);
  if (std::abs(m - q.astar) > 1e-9 * std::max(1.0, q.astar)) {
    throw std::runtime_error("qstate dump/sidecar mismatch at " +
                             prefix.string());
  }
  q.profile = extract_radial_profile(q.q);
  return q;
}

}  // namespace prh
