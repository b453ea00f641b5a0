#include "prh/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "prh/analysis.hpp"
#include "prh/coulomb.hpp"
#include "prh/errors.hpp"
#include "prh/reductions.hpp"
#include "prh/resample.hpp"
#include "prh/spectral_ops.hpp"

namespace prh {

namespace {

struct EnergyState {
  Field u;
  Field phi;       // (1/|x|) * u^2
  Field gradient;  // sqrt(-Lap+m^2)u + Vu - a phi u
  double kinetic = 0, potential = 0, hartree = 0, total = 0;
  double mu = 0;        // <G, u>
  double residual = 0;  // ||G - mu u||
};

class Flow {
 public:
  Flow(double a, double m, const PotentialSpec& spec, const Grid& grid)
      : a_(a),
        grid_(grid),
        V_(potential_eval(spec, grid)),
        kinetic_symbol_(symbol_array(grid, [m2 = m * m](double xi2) {
          return std::sqrt(xi2 + m2);
        })) {}

  double max_symbol() const {
    double s = 0;
    for (double v : kinetic_symbol_) s = std::max(s, v);
    return s;
  }

  EnergyState evaluate(Field u) const {
    EnergyState st;
    st.u = std::move(u);
    const auto& uv = st.u.values;
    Field Tu = apply_multiplier(st.u, kinetic_symbol_);
    st.kinetic = inner(Tu, st.u);
    const double h = grid_.spacing();
    st.potential =
        h * h * h * pairwise_sum(std::size_t{0}, uv.size(), [&](std::size_t i) {
          return V_.values[i] * uv[i] * uv[i];
        });
    if (a_ != 0) {
      Field rho(grid_);
      for (std::size_t i = 0; i < uv.size(); ++i) rho.values[i] = uv[i] * uv[i];
      st.phi = coulomb_convolve(rho);
      st.hartree =
          h * h * h *
          pairwise_sum(std::size_t{0}, uv.size(), [&](std::size_t i) {
            return st.phi.values[i] * rho.values[i];
          });
    } else {
      st.phi = Field(grid_);
    }
    st.total = st.kinetic + st.potential - 0.5 * a_ * st.hartree;

    st.gradient = std::move(Tu);
    for (std::size_t i = 0; i < uv.size(); ++i) {
      st.gradient.values[i] +=
          V_.values[i] * uv[i] - a_ * st.phi.values[i] * uv[i];
    }
    st.mu = inner(st.gradient, st.u);
    Field tang = st.gradient;
    for (std::size_t i = 0; i < uv.size(); ++i) {
      tang.values[i] -= st.mu * uv[i];
    }
    st.residual = l2_norm(tang);
    return st;
  }

  const Field& V() const { return V_; }
  double hartree_of(const Field& u) const { return hartree_term(u); }

 private:
  double a_;
  Grid grid_;
  Field V_;
  std::vector<double> kinetic_symbol_;
};

Field default_init(const Grid& grid) {
  const double w = std::max(1.0, grid.L / 6.0);
  Field u = sample(grid, [w](double x, double y, double z) {
    return std::exp(-(x * x + y * y + z * z) / (2.0 * w * w));
  });
  normalize(u);
  return u;
}

}  // namespace

MinimizerResult minimize(double a, double m, const PotentialSpec& spec,
                         const Grid& grid, const Field* init,
                         double astar_ref, const MinimizeOptions& opts) {
  if (a < 0) throw std::invalid_argument("minimize: coupling must be >= 0");
  if (a > 0 && !(a < 0.995 * astar_ref)) {
    throw std::invalid_argument(
        "minimize: coupling " + std::to_string(a) +
        " is inside the guard band of the critical value " +
        std::to_string(astar_ref) +
        " (need a < 0.995 a*); no minimizer exists at or above a*");
  }

  Flow flow(a, m, spec, grid);
  Field u0 = init ? *init : default_init(grid);
  {
    const double mass0 = mass(u0);
    if (std::abs(mass0 - 1.0) > 1e-10) {
      throw std::invalid_argument("minimize: init state must have unit mass");
    }
  }

  const double tau0 =
      opts.tau0 > 0 ? opts.tau0 : 0.1 / flow.max_symbol();

  EnergyState cur = flow.evaluate(std::move(u0));
  std::vector<double> energy_trace{cur.total};

  Field prev_u, prev_g;
  double tau_bb = tau0;
  int it = 0;
  for (; it < opts.max_iter && cur.residual > opts.tol; ++it) {
    double tau = std::clamp(tau_bb, 1e-3 * tau0, 2e3 * tau0);
    bool accepted = false;
    EnergyState next;
    for (int halvings = 0; halvings < 60; ++halvings) {
      Field cand = cur.u;
      for (std::size_t i = 0; i < cand.values.size(); ++i) {
        cand.values[i] -= tau * cur.gradient.values[i];
      }
      normalize(cand);
      next = flow.evaluate(std::move(cand));
      if (next.total <= cur.total) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      throw ConvergenceError(
          "minimize: line search stalled at residual " +
          std::to_string(cur.residual) + " (tol " + std::to_string(opts.tol) +
          ", a = " + std::to_string(a) + ")");
    }

    // Barzilai-Borwein proposal for the next step
    double ss = 0, sy = 0;
    for (std::size_t i = 0; i < next.u.values.size(); ++i) {
      const double s = next.u.values[i] - cur.u.values[i];
      const double y = next.gradient.values[i] - cur.gradient.values[i];
      ss += s * s;
      sy += s * y;
    }
    tau_bb = sy > 0 ? ss / sy : 2e3 * tau0;

    cur = std::move(next);
    energy_trace.push_back(cur.total);
    if (energy_trace.size() > 64) energy_trace.erase(energy_trace.begin());
  }
  if (cur.residual > opts.tol) {
    throw ConvergenceError("minimize: no convergence after " +
                           std::to_string(opts.max_iter) +
                           " iterations (residual " +
                           std::to_string(cur.residual) + ", a = " +
                           std::to_string(a) + ")");
  }

  MinimizerResult res;
  res.a = a;
  res.mass_param = m;
  res.iterations = it;
  res.residual = cur.residual;
  res.min_value = min_value(cur.u);
  res.boundary_ratio = boundary_contamination(cur.u);
  res.breakdown = EnergyBreakdown{cur.kinetic, cur.potential,
                                  a == 0 ? flow.hartree_of(cur.u) : cur.hartree,
                                  cur.total, a, m};
  res.e_a = cur.total;
  res.mu_a = cur.mu;
  res.energy_trace = std::move(energy_trace);
  res.u = std::move(cur.u);
  return res;
}

std::vector<SweepEntry> sweep(
    std::span<const double> a_values, double m, const PotentialSpec& spec,
    const Grid& base_grid, double astar_ref, const SweepOptions& opts,
    const std::function<void(const SweepEntry&, std::size_t)>& on_entry) {
  for (std::size_t i = 0; i + 1 < a_values.size(); ++i) {
    if (!(a_values[i] < a_values[i + 1])) {
      throw std::invalid_argument("sweep: couplings must be ascending");
    }
  }
  const double p = spec.max_exponent;
  auto grid_for = [&](double a) {
    if (opts.box_scale <= 0) return base_grid;
    const double lam = collapse_scale(a, astar_ref, p);
    const double L_min = opts.L_min > 0 ? opts.L_min : base_grid.L / 4;
    const double L = std::clamp(opts.box_scale * lam, L_min, base_grid.L);
    return make_grid(base_grid.n, L);
  };

  std::vector<SweepEntry> out;
  std::optional<Field> warm = opts.warm_start;
  std::optional<double> warm_lambda;
  if (opts.skip > 0 && opts.skip <= static_cast<int>(a_values.size())) {
    warm_lambda = collapse_scale(a_values[opts.skip - 1], astar_ref, p);
  }

  for (std::size_t idx = opts.skip; idx < a_values.size(); ++idx) {
    const double a = a_values[idx];
    const Grid grid = grid_for(a);

    Field init;
    const Field* init_ptr = nullptr;
    if (warm) {
      const double lam = collapse_scale(a, astar_ref, p);
      const double ratio = warm_lambda ? lam / *warm_lambda : 1.0;
      // track the shrinking width: u_new(x) ~ ratio^{-3/2} u_prev(x / ratio)
      std::vector<double> xs(grid.n), ys(grid.n), zs(grid.n);
      for (int i = 0; i < grid.n; ++i) {
        const double c = grid.coord(i) / ratio;
        xs[i] = ys[i] = zs[i] = c;
      }
      init.grid = grid;
      init.values = spectral_resample(*warm, xs, ys, zs);
      normalize(init);
      init_ptr = &init;
      warm_lambda = lam;
    } else {
      warm_lambda = collapse_scale(a, astar_ref, p);
    }

    SweepEntry entry;
    entry.a = a;
    entry.grid = grid;
    try {
      entry.result =
          minimize(a, m, spec, grid, init_ptr, astar_ref, opts.solve);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("sweep entry a = " + std::to_string(a) + ": " +
                             e.what());
    }
    warm = entry.result.u;
    if (on_entry) on_entry(entry, idx);
    out.push_back(std::move(entry));
  }
  return out;
}

SweepRow to_row(const SweepEntry& e) {
  return SweepRow{e.a,
                  e.result.e_a,
                  e.result.breakdown.kinetic,
                  e.result.breakdown.potential,
                  e.result.breakdown.hartree,
                  e.result.mu_a,
                  e.result.residual,
                  e.result.iterations};
}

namespace {
constexpr char kSweepHeader[] =
    "a,e_a,kinetic,potential,hartree,mu_a,residual,iterations";
}

void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepRow> rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kSweepHeader << "\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.a,
                  r.e_a, r.kinetic, r.potential, r.hartree, r.mu_a,
                  r.residual, r.iterations);
    out << buf;
  }
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw std::runtime_error("bad sweep CSV header in " + path.string());
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepRow r;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    if (!(ss >> r.a >> r.e_a >> r.kinetic >> r.potential >> r.hartree >>
          r.mu_a >> r.residual >> r.iterations)) {
      throw std::runtime_error("bad sweep CSV row: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace prh
