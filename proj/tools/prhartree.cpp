// Command-line driver: ground-state, minimize, sweep, analyze,
// nonexistence, trial-energy subcommands over a shared config file.
//
// Exit codes: 0 success, 2 config error, 3 convergence failure,
// 4 certification failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "prh/config.hpp"
#include "prh/errors.hpp"
#include "prh/run.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_override;
  bool dump_fields = false;
  bool resume = false;
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_resume = false) {
  sub->add_option("--config", args.config_path, "run configuration file")
      ->required();
  sub->add_option("--out", args.out_override, "override output directory");
  sub->add_flag("--dump-fields", args.dump_fields,
                "persist field dumps for every entry");
  if (with_resume) {
    sub->add_flag("--resume", args.resume,
                  "continue from the last persisted sweep entry");
  }
}

prh::RunConfig load(const CommonArgs& args) {
  prh::RunConfig cfg = prh::parse_config(args.config_path);
  if (!args.out_override.empty()) cfg.directory = args.out_override;
  if (args.dump_fields) cfg.dump_fields = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-relativistic Hartree minimization suite"};
  app.require_subcommand(1);

  CommonArgs args;
  int rc = 0;
  auto runner = [&](auto fn) {
    return [&args, &rc, fn]() {
      try {
        rc = fn(load(args));
      } catch (const prh::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        rc = prh::kExitConfig;
      } catch (const prh::ConvergenceError& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        rc = prh::kExitConvergence;
      } catch (const prh::CertificationError& e) {
        std::fprintf(stderr, "certification failure: %s\n", e.what());
        rc = prh::kExitCertification;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        rc = 1;
      }
    };
  };

  add_common(app.add_subcommand("ground-state",
                                "solve and certify the ground state"),
             args);
  app.get_subcommand("ground-state")
      ->callback(runner([](const prh::RunConfig& c) {
        return prh::run_ground_state(c);
      }));

  add_common(app.add_subcommand("minimize",
                                "constrained solve at one coupling"),
             args);
  app.get_subcommand("minimize")->callback(runner(
      [](const prh::RunConfig& c) { return prh::run_minimize(c); }));

  add_common(
      app.add_subcommand("sweep", "warm-started sweep over couplings"), args,
      /*with_resume=*/true);
  app.get_subcommand("sweep")->callback(runner(
      [&args](const prh::RunConfig& c) {
        return prh::run_sweep(c, args.resume);
      }));

  add_common(app.add_subcommand(
                 "analyze", "scaling fits and profile comparisons"),
             args);
  app.get_subcommand("analyze")->callback(runner(
      [](const prh::RunConfig& c) { return prh::run_analyze(c); }));

  add_common(app.add_subcommand("nonexistence",
                                "trial-state descent probe at a >= a*"),
             args);
  app.get_subcommand("nonexistence")->callback(runner(
      [](const prh::RunConfig& c) { return prh::run_nonexistence(c); }));

  add_common(app.add_subcommand("trial-energy",
                                "trial-state energy table at one coupling"),
             args);
  app.get_subcommand("trial-energy")->callback(runner(
      [](const prh::RunConfig& c) { return prh::run_trial_energy(c); }));

  CLI11_PARSE(app, argc, argv);
  return rc;
}
