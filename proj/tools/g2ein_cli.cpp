/// @file g2ein_cli.cpp
/// Command-line front end: `g2ein {verify|solve|fuchsian} [--config PATH]
/// [--seed N] [--out DIR]`.  Exit codes: 0 all checks pass, 1 a check or the
/// solve failed, 2 unusable input (bad config, bad CLI arguments).

#include "g2e/report.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"g2ein: split-octonion algebra, Einstein-universe null geometry, "
               "and the cyclic rank-7 Hitchin system"};
  app.require_subcommand(1);
  app.fallthrough(true); // allow --config/--seed/--out after the subcommand

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "Configuration file (key = value with [sections])");
  app.add_option("--seed", seed, "RNG seed recorded in the report (default 0)");
  app.add_option("--out", out_dir, "Output directory for reports and CSV files (default .)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "Run the invariant verification checks");
  CLI::App* cmd_solve = app.add_subcommand("solve", "Solve a PDE instance and report margins");
  CLI::App* cmd_fuchsian =
      app.add_subcommand("fuchsian", "Sample the developed fibers and classification tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    g2e::RunConfig cfg;
    if (!config_path.empty()) cfg = g2e::RunConfig::from_file(config_path);

    g2e::Report rep;
    if (cmd_verify->parsed()) {
      rep = g2e::run_verify(cfg, seed);
    } else if (cmd_solve->parsed()) {
      rep = g2e::run_solve(cfg, seed, out_dir);
    } else if (cmd_fuchsian->parsed()) {
      rep = g2e::run_fuchsian(cfg, seed, out_dir);
    }
    rep.write(out_dir);

    for (const auto& c : rep.checks)
      std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  value=" << c.value
                << " tol=" << c.tolerance << "\n";
    std::cout << (rep.pass() ? "OK" : "FAILED") << "  suite=" << rep.suite
              << " seed=" << rep.seed << "\n";
    return rep.pass() ? 0 : 1;
  } catch (const g2e::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
