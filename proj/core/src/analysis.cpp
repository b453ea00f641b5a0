#include "prh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "prh/fft.hpp"
#include "prh/reductions.hpp"
#include "prh/resample.hpp"

namespace prh {

double collapse_scale(double a, double astar, double p) {
  return std::pow(astar - a, 1.0 / (p + 1.0));
}

Field rescale(const Field& u_a, double a, double astar, double p,
              const Vec3& x_j, const Grid& target_grid) {
  if (!(a < astar)) {
    throw std::invalid_argument("rescale: need a < astar");
  }
  const double lam = collapse_scale(a, astar, p);
  const double Ls = u_a.grid.L;
  for (int d = 0; d < 3; ++d) {
    const double lo = -lam * target_grid.L + x_j[d];
    const double hi = lam * target_grid.L + x_j[d];
    if (lo < -Ls || hi > Ls) {
      throw std::invalid_argument(
          "rescale: rescaled window exceeds the source box");
    }
  }
  std::vector<double> ax[3];
  for (int d = 0; d < 3; ++d) {
    ax[d].resize(target_grid.n);
    for (int i = 0; i < target_grid.n; ++i) {
      ax[d][i] = lam * target_grid.coord(i) + x_j[d];
    }
  }
  Field w(target_grid);
  w.values = spectral_resample(u_a, ax[0], ax[1], ax[2]);
  const double amp = std::pow(lam, 1.5);
  for (double& v : w.values) v *= amp;
  return w;
}

ConcentrationPick concentration_point(const Field& u_a,
                                      const PotentialSpec& spec,
                                      double lambda) {
  const double radius = 10.0 * lambda;
  const double r2 = radius * radius;
  const double h = u_a.grid.spacing();
  const double h3 = h * h * h;
  const int n = u_a.grid.n;

  ConcentrationPick best;
  for (std::size_t t = 0; t < spec.count(); ++t) {
    const Vec3& c = spec.points[t];
    double captured = 0;
    for (int i = 0; i < n; ++i) {
      const double dx = u_a.grid.coord(i) - c[0];
      if (dx * dx > r2) continue;
      for (int j = 0; j < n; ++j) {
        const double dy = u_a.grid.coord(j) - c[1];
        const double dxy2 = dx * dx + dy * dy;
        if (dxy2 > r2) continue;
        for (int k = 0; k < n; ++k) {
          const double dz = u_a.grid.coord(k) - c[2];
          if (dxy2 + dz * dz > r2) continue;
          const double v = u_a(i, j, k);
          captured += v * v;
        }
      }
    }
    captured *= h3;
    if (captured > best.mass_fraction) {
      best.index = static_cast<int>(t);
      best.point = c;
      best.mass_fraction = captured;
    }
  }
  best.mass_fraction /= mass(u_a);
  if (best.mass_fraction < 0.5) {
    throw std::runtime_error(
        "concentration_point: not yet concentrated (largest captured "
        "fraction " + std::to_string(best.mass_fraction) + ")");
  }
  return best;
}

namespace {

Field reference_profile(const Grid& g, const QState& q, double mu,
                        const Vec3& y) {
  const double amp = std::pow(mu, 1.5) / std::sqrt(q.astar);
  return sample(g, [&](double x1, double x2, double x3) {
    const double d1 = x1 - y[0], d2 = x2 - y[1], d3 = x3 - y[2];
    const double r = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
    return amp * q.profile(mu * r);
  });
}

}  // namespace

ProfileComparison profile_distance(const Field& w, const QState& q,
                                   double mu) {
  const Grid& g = w.grid;
  ProfileComparison out;
  out.mu_used = mu;
  out.mass_w = mass(w);

  // cross-correlation over grid shifts via the convolution theorem
  Field ref = reference_profile(g, q, mu, Vec3{0, 0, 0});
  SpectralField wh = forward_transform(w);
  SpectralField rh = forward_transform(ref);
  for (std::size_t i = 0; i < wh.coeffs.size(); ++i) {
    rh.coeffs[i] = std::conj(rh.coeffs[i]) * wh.coeffs[i];
  }
  // corr(s) = h^3 sum_x w(x) ref(x - s)
  Field corr = inverse_transform(rh);

  int bi = 0, bj = 0, bk = 0;
  double best = -1e300;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      for (int k = 0; k < g.n; ++k) {
        if (corr(i, j, k) > best) {
          best = corr(i, j, k);
          bi = i;
          bj = j;
          bk = k;
        }
      }
    }
  }
  // parabolic sub-grid refinement per axis (periodic neighbors)
  const double h = g.spacing();
  Vec3 shift{g.coord(bi), g.coord(bj), g.coord(bk)};
  {
    const int n = g.n;
    auto at = [&](int i, int j, int k) {
      return corr((i + n) % n, (j + n) % n, (k + n) % n);
    };
    const double c0 = at(bi, bj, bk);
    const double mx = at(bi - 1, bj, bk), px = at(bi + 1, bj, bk);
    const double my = at(bi, bj - 1, bk), py = at(bi, bj + 1, bk);
    const double mz = at(bi, bj, bk - 1), pz = at(bi, bj, bk + 1);
    auto vertex = [&](double m, double p) {
      const double den = m - 2 * c0 + p;
      return den < 0 ? std::clamp(0.5 * (m - p) / den, -0.5, 0.5) : 0.0;
    };
    shift[0] += h * vertex(mx, px);
    shift[1] += h * vertex(my, py);
    shift[2] += h * vertex(mz, pz);
  }

  Field ref_shifted = reference_profile(g, q, mu, shift);
  Field diff = w;
  for (std::size_t i = 0; i < diff.values.size(); ++i) {
    diff.values[i] -= ref_shifted.values[i];
  }
  out.l2_distance = l2_norm(diff);
  out.shift = shift;
  return out;
}

namespace {

struct LineFit {
  double slope = 0, intercept = 0, slope_stderr = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double den = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  if (x.size() > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - f.slope * x[i] - f.intercept;
      ss += r * r;
    }
    f.slope_stderr = std::sqrt(ss / (n - 2) * n / den);
  }
  return f;
}

}  // namespace

ScalingReport fit_scaling(std::span<const SweepRow> rows, double astar,
                          const PotentialSpec& spec, const QState& q,
                          double resid_tol) {
  ScalingReport rep;
  std::vector<double> lg, le, lh;
  for (const auto& r : rows) {
    ScalingPoint pt;
    pt.a = r.a;
    pt.gap = astar - r.a;
    pt.e_a = r.e_a;
    pt.hartree = r.hartree;
    pt.residual = r.residual;
    pt.used = r.residual <= resid_tol && pt.gap > 0 && r.e_a > 0 &&
              r.hartree > 0;
    rep.points.push_back(pt);
    if (pt.used) {
      lg.push_back(std::log(pt.gap));
      le.push_back(std::log(r.e_a));
      lh.push_back(std::log(r.hartree));
    }
  }
  if (lg.size() < 5) {
    throw std::invalid_argument(
        "fit_scaling: need >= 5 usable sweep points, have " +
        std::to_string(lg.size()));
  }
  const LineFit fe = fit_line(lg, le);
  const LineFit fh = fit_line(lg, lh);
  rep.energy_exponent = fe.slope;
  rep.energy_exponent_stderr = fe.slope_stderr;
  rep.hartree_exponent = fh.slope;
  rep.hartree_exponent_stderr = fh.slope_stderr;
  rep.energy_prefactor = std::exp(fe.intercept);

  const double p = spec.max_exponent;
  const double mu = mu_predicted(spec.kappa, p, q);
  rep.predicted_prefactor = (p + 1.0) / p * mu / astar;
  return rep;
}

double symmetry_gap(const QState& q, const Vec3& offset, double p) {
  const Grid& g = q.q.grid;
  for (double c : offset) {
    if (std::abs(c) > g.L / 4) {
      throw std::invalid_argument("symmetry_gap: offset outside box margin");
    }
  }
  const int n = g.n;
  std::vector<double> contrib(g.size());
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = g.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        const double z = g.coord(k);
        const double r2 = x * x + y * y + z * z;
        const double dx = x + offset[0], dy = y + offset[1],
                     dz = z + offset[2];
        const double rs2 = dx * dx + dy * dy + dz * dz;
        const double qq = q.q.values[idx] * q.q.values[idx];
        contrib[idx] =
            (std::pow(rs2, 0.5 * p) - std::pow(r2, 0.5 * p)) * qq;
      }
    }
  }
  const double h = g.spacing();
  return h * h * h *
         pairwise_sum(std::size_t{0}, contrib.size(),
                      [&](std::size_t i) { return contrib[i]; });
}

void save_scaling_report(const std::filesystem::path& path,
                         const ScalingReport& r) {
  nlohmann::json j;
  j["energy_exponent"] = r.energy_exponent;
  j["energy_exponent_stderr"] = r.energy_exponent_stderr;
  j["hartree_exponent"] = r.hartree_exponent;
  j["hartree_exponent_stderr"] = r.hartree_exponent_stderr;
  j["energy_prefactor"] = r.energy_prefactor;
  j["predicted_prefactor"] = r.predicted_prefactor;
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"a", p.a},
                   {"gap", p.gap},
                   {"e_a", p.e_a},
                   {"hartree", p.hartree},
                   {"residual", p.residual},
                   {"used", p.used}});
  }
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

ScalingReport load_scaling_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  in >> j;
  ScalingReport r;
  r.energy_exponent = j.at("energy_exponent");
  r.energy_exponent_stderr = j.at("energy_exponent_stderr");
  r.hartree_exponent = j.at("hartree_exponent");
  r.hartree_exponent_stderr = j.at("hartree_exponent_stderr");
  r.energy_prefactor = j.at("energy_prefactor");
  r.predicted_prefactor = j.at("predicted_prefactor");
  for (const auto& pj : j.at("points")) {
    ScalingPoint p;
    p.a = pj.at("a");
    p.gap = pj.at("gap");
    p.e_a = pj.at("e_a");
    p.hartree = pj.at("hartree");
    p.residual = pj.at("residual");
    p.used = pj.at("used");
    r.points.push_back(p);
  }
  return r;
}

}  // namespace prh
