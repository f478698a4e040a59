// risac: command-line front end for the beamforming workbench.
//
//   risac run --config scenario.cfg [--algo sre|benchmark|no-ris|all]
//             [--sweep gamma0|ris-size] [--trials N] [--seed S] [--out DIR]
//
// Exit codes: 0 on success, 1 on config/usage errors, 2 when every row
// failed to converge (e.g. the comms floor was infeasible everywhere).

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "risac/risac.hpp"

int main(int argc, char** argv) {
  CLI::App app{"RIS-assisted sensing/communication beamforming workbench"};
  app.set_version_flag("--version", std::string("risac ") + risac::kVersion);
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run an experiment from a config");
  std::string config_path;
  std::string algo;
  std::string sweep;
  int trials = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  run->add_option("--config", config_path, "key=value scenario/run config")
      ->required();
  run->add_option("--algo", algo, "sre, benchmark, no-ris or all");
  run->add_option("--sweep", sweep, "none, gamma0 or ris-size");
  run->add_option("--trials", trials, "number of channel realizations");
  run->add_option("--seed", seed, "base seed (overrides the config)")
      ->each([&](const std::string&) { seed_set = true; });
  run->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    risac::RunConfig cfg = risac::load_run_config(config_path);
    if (!algo.empty()) cfg.algo = risac::parse_algo(algo);
    if (!sweep.empty()) cfg.sweep = risac::parse_sweep(sweep);
    if (trials >= 0) {
      if (trials < 1) throw risac::ConfigError("trials must be >= 1");
      cfg.trials = trials;
    }
    if (seed_set) cfg.scenario.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.validate();

    const std::vector<risac::ResultRow> rows = risac::run_experiment(cfg);
    risac::write_outputs(rows, cfg, cfg.out_dir);

    std::size_t converged = 0;
    for (const auto& r : rows) converged += r.converged ? 1 : 0;
    std::cout << "wrote " << rows.size() << " rows to " << cfg.out_dir << " ("
              << converged << " converged)\n";
    if (converged == 0) {
      std::cerr << "risac: no run converged; see " << cfg.out_dir
                << "/results.csv\n";
      return 2;
    }
    return 0;
  } catch (const risac::ConfigError& e) {
    std::cerr << "risac: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "risac: " << e.what() << "\n";
    return 1;
  }
}
