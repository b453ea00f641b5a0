#include "prh/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "prh/analysis.hpp"
#include "prh/errors.hpp"
#include "prh/field_io.hpp"
#include "prh/ground_state.hpp"
#include "prh/minimize.hpp"
#include "prh/trial.hpp"

namespace fs = std::filesystem;

namespace prh {

namespace {

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.directory);
  fs::create_directories(dir);
  return dir;
}

PotentialSpec potential_from(const RunConfig& cfg) {
  if (cfg.trap_points.empty()) {
    throw ConfigError("config: this command needs a [potential] section");
  }
  return make_potential(cfg.trap_points, cfg.trap_exponents);
}

QState qstate_from(const RunConfig& cfg) {
  if (cfg.qstate.empty()) {
    throw ConfigError(
        "config: this command needs inputs.qstate (run ground-state first)");
  }
  if (!fs::exists(cfg.qstate + ".field") || !fs::exists(cfg.qstate + ".json")) {
    throw ConfigError("missing ground state files at prefix '" + cfg.qstate +
                      "' (run ground-state first)");
  }
  return load_qstate(cfg.qstate);
}

double single_fraction(const RunConfig& cfg) {
  if (cfg.a_fractions.size() != 1) {
    throw ConfigError(
        "config: this command needs exactly one physics.a_fraction");
  }
  return cfg.a_fractions.front();
}

std::string entry_field_name(std::size_t idx) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sweep_%03zu.field", idx);
  return buf;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

nlohmann::json breakdown_json(const EnergyBreakdown& b) {
  return {{"kinetic", b.kinetic},
          {"potential", b.potential},
          {"hartree", b.hartree},
          {"total", b.total},
          {"a", b.coupling},
          {"m", b.mass_param}};
}

}  // namespace

int run_ground_state(const RunConfig& cfg) {
  const Grid grid = make_grid(cfg.n, cfg.L);
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  std::printf("ground-state: solving on %d^3, L = %g, tol = %g\n", cfg.n,
              cfg.L, cfg.tol);
  const QState q = solve_q(grid, opts);
  const fs::path dir = out_dir(cfg);
  save_qstate(dir / "qstate", q);

  CertThresholds thr;
  thr.residual_tol = cfg.tol;
  const Certification cert = certify(q, thr);
  std::printf(
      "ground-state: astar = %.8f  pohozaev = (%.6f, %.6f)  slope = %.3f  "
      "residual = %.3e  iterations = %d\n",
      q.astar, q.pohozaev_ratios[0], q.pohozaev_ratios[1], q.decay_slope,
      q.residual, q.iterations);
  if (!cert.ok()) {
    std::fprintf(stderr,
                 "ground-state: certification FAILED (positive=%d "
                 "monotone=%d pohozaev=%d slope=%d residual=%d)\n",
                 cert.positive, cert.monotone_radial, cert.pohozaev_ok,
                 cert.slope_ok, cert.residual_ok);
    return kExitCertification;
  }
  std::printf("ground-state: certified; wrote %s\n",
              (dir / "qstate").string().c_str());
  return kExitOk;
}

int run_minimize(const RunConfig& cfg) {
  const QState q = qstate_from(cfg);
  const PotentialSpec spec = potential_from(cfg);
  const Grid grid = make_grid(cfg.n, cfg.L);
  const double a = single_fraction(cfg) * q.astar;

  MinimizeOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.tau0 = cfg.tau0;
  const MinimizerResult res = minimize(a, cfg.m, spec, grid, nullptr,
                                       q.astar, opts);
  std::printf("minimize: a = %.6f (a/a* = %.3f)  e(a) = %.8f  mu = %.6f  "
              "iterations = %d\n",
              a, a / q.astar, res.e_a, res.mu_a, res.iterations);

  const fs::path dir = out_dir(cfg);
  const SweepRow row{res.a,
                     res.e_a,
                     res.breakdown.kinetic,
                     res.breakdown.potential,
                     res.breakdown.hartree,
                     res.mu_a,
                     res.residual,
                     res.iterations};
  write_sweep_csv(dir / "minimize.csv", std::span(&row, 1));
  nlohmann::json j = breakdown_json(res.breakdown);
  j["e_a"] = res.e_a;
  j["mu_a"] = res.mu_a;
  j["iterations"] = res.iterations;
  j["residual"] = res.residual;
  j["min_value"] = res.min_value;
  j["boundary_ratio"] = res.boundary_ratio;
  write_json(dir / "minimize.json", j);
  if (cfg.dump_fields) write_field(dir / "minimize_u.field", res.u);
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, bool resume) {
  const QState q = qstate_from(cfg);
  const PotentialSpec spec = potential_from(cfg);
  const Grid base_grid = make_grid(cfg.n, cfg.L);
  if (cfg.a_fractions.empty()) {
    throw ConfigError("config: sweep needs physics.a_fractions");
  }
  std::vector<double> a_values;
  for (double f : cfg.a_fractions) a_values.push_back(f * q.astar);

  const fs::path dir = out_dir(cfg);
  const fs::path csv = dir / "sweep.csv";
  const fs::path checkpoint = dir / "checkpoint.field";

  std::vector<SweepRow> rows;
  SweepOptions opts;
  opts.solve.tol = cfg.tol;
  opts.solve.max_iter = cfg.max_iter;
  opts.solve.tau0 = cfg.tau0;
  opts.box_scale = cfg.box_scale;
  opts.L_min = cfg.L_min;

  if (resume && fs::exists(csv)) {
    rows = read_sweep_csv(csv);
    opts.skip = static_cast<int>(rows.size());
    if (opts.skip > 0) {
      if (!fs::exists(checkpoint)) {
        throw ConfigError("resume: sweep.csv has rows but checkpoint.field "
                          "is missing");
      }
      opts.warm_start = read_field(checkpoint);
      std::printf("sweep: resuming after %d persisted entries\n", opts.skip);
    }
  }

  nlohmann::json manifest;
  const fs::path manifest_path = dir / "sweep.json";
  if (opts.skip > 0 && fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    in >> manifest;
  } else {
    manifest["astar"] = q.astar;
    manifest["m"] = cfg.m;
    manifest["entries"] = nlohmann::json::array();
  }

  sweep(a_values, cfg.m, spec, base_grid, q.astar, opts,
        [&](const SweepEntry& e, std::size_t idx) {
          rows.push_back(to_row(e));
          write_sweep_csv(csv, rows);
          write_field(checkpoint, e.result.u);
          nlohmann::json entry = {{"a", e.a},
                                  {"n", e.grid.n},
                                  {"L", e.grid.L},
                                  {"residual", e.result.residual},
                                  {"boundary_ratio", e.result.boundary_ratio},
                                  {"min_value", e.result.min_value}};
          if (cfg.dump_fields) {
            const std::string name = entry_field_name(idx);
            write_field(dir / name, e.result.u);
            entry["field"] = name;
          }
          manifest["entries"].push_back(entry);
          write_json(manifest_path, manifest);
          std::printf("sweep: a/a* = %.4f  e = %.8f  hartree = %.6f  "
                      "iters = %d  (L = %g)\n",
                      e.a / q.astar, e.result.e_a,
                      e.result.breakdown.hartree, e.result.iterations,
                      e.grid.L);
        });
  std::printf("sweep: %zu rows in %s\n", rows.size(), csv.string().c_str());
  return kExitOk;
}

int run_analyze(const RunConfig& cfg) {
  const QState q = qstate_from(cfg);
  const PotentialSpec spec = potential_from(cfg);
  const fs::path dir = out_dir(cfg);
  const fs::path csv = dir / "sweep.csv";
  if (!fs::exists(csv)) {
    throw ConfigError("analyze: missing " + csv.string() +
                      " (run sweep first)");
  }
  const auto rows = read_sweep_csv(csv);

  std::vector<SweepRow> window;
  for (const auto& r : rows) {
    const double f = r.a / q.astar;
    if (f >= cfg.fit_lo - 1e-12 && f <= cfg.fit_hi + 1e-12) {
      window.push_back(r);
    }
  }
  const ScalingReport rep =
      fit_scaling(window, q.astar, spec, q, 10 * cfg.tol);
  save_scaling_report(dir / "scaling.json", rep);

  // plot-ready two-column files
  for (const char* name : {"loglog_energy.csv", "loglog_hartree.csv"}) {
    std::ofstream out(dir / name);
    out << (std::string(name) == "loglog_energy.csv"
                ? "log_gap,log_e\n"
                : "log_gap,log_hartree\n");
    for (const auto& p : rep.points) {
      if (!p.used) continue;
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", std::log(p.gap),
                    std::log(std::string(name) == "loglog_energy.csv"
                                 ? p.e_a
                                 : p.hartree));
      out << buf;
    }
  }
  std::printf("analyze: energy exponent %.4f (predicted %.4f), hartree "
              "exponent %.4f (predicted %.4f)\n",
              rep.energy_exponent,
              spec.max_exponent / (spec.max_exponent + 1),
              rep.hartree_exponent, -1.0 / (spec.max_exponent + 1));
  std::printf("analyze: prefactor %.4f vs predicted %.4f\n",
              rep.energy_prefactor, rep.predicted_prefactor);

  // profile comparisons for entries with persisted fields
  const fs::path manifest_path = dir / "sweep.json";
  if (fs::exists(manifest_path)) {
    nlohmann::json manifest;
    {
      std::ifstream in(manifest_path);
      in >> manifest;
    }
    const double p = spec.max_exponent;
    const double mu = mu_predicted(spec.kappa, p, q);
    nlohmann::json profs = nlohmann::json::array();
    std::ofstream pcsv(dir / "profiles.csv");
    pcsv << "a,lambda,distance,shift_x,shift_y,shift_z,mass_fraction\n";
    for (const auto& entry : manifest["entries"]) {
      if (!entry.contains("field")) continue;
      const double a = entry["a"];
      const Field u =
          read_field(dir / entry["field"].get<std::string>());
      const double lam = collapse_scale(a, q.astar, p);
      ConcentrationPick pick;
      try {
        pick = concentration_point(u, spec, lam);
      } catch (const std::runtime_error&) {
        continue;  // not yet concentrated; skip this entry
      }
      const int tn = cfg.profile_n > 0 ? cfg.profile_n : u.grid.n;
      const double tl = cfg.profile_box > 0
                            ? cfg.profile_box
                            : std::min(12.0, 0.9 * u.grid.L / lam);
      const Field w =
          rescale(u, a, q.astar, p, pick.point, make_grid(tn, tl));
      const ProfileComparison pc = profile_distance(w, q, mu);
      char buf[256];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    a, lam, pc.l2_distance, pc.shift[0], pc.shift[1],
                    pc.shift[2], pick.mass_fraction);
      pcsv << buf;
      profs.push_back({{"a", a},
                       {"lambda", lam},
                       {"distance", pc.l2_distance},
                       {"shift", pc.shift},
                       {"mass_fraction", pick.mass_fraction},
                       {"mu", mu}});
      std::printf("analyze: a/a* = %.4f  profile distance %.4f  |shift| = "
                  "%.3e\n",
                  a / q.astar, pc.l2_distance,
                  std::sqrt(pc.shift[0] * pc.shift[0] +
                            pc.shift[1] * pc.shift[1] +
                            pc.shift[2] * pc.shift[2]));
    }
    write_json(dir / "profiles.json", profs);
  }
  return kExitOk;
}

int run_nonexistence(const RunConfig& cfg) {
  const QState q = qstate_from(cfg);
  const PotentialSpec spec = potential_from(cfg);
  const double a = single_fraction(cfg) * q.astar;
  if (cfg.R_values.size() < 2) {
    throw ConfigError("config: nonexistence needs trial.R_values (>= 2)");
  }
  if (!(cfg.delta > 0)) {
    throw ConfigError("config: nonexistence needs trial.delta > 0");
  }
  const DescentReport rep =
      nonexistence_probe(a, cfg.m, spec, cfg.R_values, q, cfg.delta);

  const fs::path dir = out_dir(cfg);
  std::ofstream csv(dir / "nonexistence.csv");
  csv << "R,kinetic,potential,hartree,total\n";
  for (std::size_t i = 0; i < rep.R_values.size(); ++i) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  rep.R_values[i], rep.energies[i].kinetic,
                  rep.energies[i].potential, rep.energies[i].hartree,
                  rep.energies[i].total);
    csv << buf;
  }
  nlohmann::json j;
  j["a"] = rep.a;
  j["a_over_astar"] = rep.a / q.astar;
  j["coefficient"] = rep.coefficient;
  j["intercept"] = rep.intercept;
  write_json(dir / "nonexistence.json", j);
  std::printf("nonexistence: a/a* = %.4f  descent coefficient = %.6f\n",
              rep.a / q.astar, rep.coefficient);
  return kExitOk;
}

int run_trial_energy(const RunConfig& cfg) {
  const QState q = qstate_from(cfg);
  const PotentialSpec spec = potential_from(cfg);
  const double a = single_fraction(cfg) * q.astar;
  if (cfg.R_values.empty()) {
    throw ConfigError("config: trial-energy needs trial.R_values");
  }
  if (!(cfg.delta > 0)) {
    throw ConfigError("config: trial-energy needs trial.delta > 0");
  }
  const Vec3 x0 = spec.points[spec.flattest.front()];

  const fs::path dir = out_dir(cfg);
  std::ofstream csv(dir / "trial_energy.csv");
  csv << "R,A_R2,kinetic,potential,hartree,total\n";
  for (double R : cfg.R_values) {
    const TrialState t = trial_state(R, x0, cfg.delta, q, q.q.grid);
    const EnergyBreakdown b = trial_energy(a, cfg.m, spec, t);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  R, t.A_R2, b.kinetic, b.potential, b.hartree, b.total);
    csv << buf;
    std::printf("trial-energy: R = %6.2f  E = %.8f\n", R, b.total);
  }
  return kExitOk;
}

}  // namespace prh
