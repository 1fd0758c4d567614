#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "grhd/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"PCP solvers for general relativistic hydrodynamics"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "advance a configured problem");
  run_cmd->add_option("config", config_path, "run configuration (JSON)")
      ->required();

  std::string check_path;
  auto* check_cmd =
      app.add_subcommand("check-config", "validate a configuration file");
  check_cmd->add_option("config", check_path, "run configuration (JSON)")
      ->required();

  std::string conv_path;
  int levels = 3;
  std::string conv_csv = "order_table.csv";
  auto* conv_cmd = app.add_subcommand(
      "converge", "smooth-advection refinement study for the configured scheme");
  conv_cmd->add_option("config", conv_path, "run configuration (JSON)")
      ->required();
  conv_cmd->add_option("--levels", levels, "number of refinement levels");
  conv_cmd->add_option("--out", conv_csv, "order-table CSV path");

  unsigned long seed = 20240811u;
  auto* props_cmd =
      app.add_subcommand("props", "run the randomized property suites");
  props_cmd->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const grhd::RunConfig cfg = grhd::load_config(config_path);
      const grhd::RunResult res = grhd::run(cfg);
      if (res.status != 0) {
        std::cerr << "run aborted: " << res.error << "\n";
        return res.status;
      }
      std::cout << "completed " << res.steps << " steps to t = " << res.t
                << "\n";
      return 0;
    }
    if (*check_cmd) {
      (void)grhd::load_config(check_path);
      std::cout << "configuration ok\n";
      return 0;
    }
    if (*conv_cmd) {
      const grhd::RunConfig cfg = grhd::load_config(conv_path);
      const auto rows = grhd::convergence_harness(cfg, levels, conv_csv);
      std::cout << "cells  L1           order\n";
      for (const auto& r : rows)
        std::printf("%-6d %.6e %.3f\n", r.cells, r.l1_error, r.order);
      return 0;
    }
    if (*props_cmd) return grhd::run_property_suite(seed, std::cout);
  } catch (const grhd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
