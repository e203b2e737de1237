// Experiment runner for the truncated OHS coagulation solver.
//
//   ohs_lab simulate <config.json> [--out DIR] [--quiet]
//   ohs_lab sweep    <config.json> [--out DIR] [--workers N] [--quiet]
//   ohs_lab check    <run-dir|config.json> [--out DIR] [--quiet]

#include <iostream>

#include <CLI11.hpp>

#include "ohs/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume laboratory for the Oort-Hulst-Safronov coagulation equation"};
  app.require_subcommand(1);
  app.fallthrough();

  ohs::cli::Options opts;
  std::string out = opts.out.string();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--workers", opts.workers, "Concurrent sweep rows (0: one per processor)")
      ->capture_default_str();
  app.add_flag("--quiet", opts.quiet, "Suppress the summary on stdout");

  std::string path;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write its artifacts");
  simulate->add_option("config", path, "Config JSON (or a run manifest)")->required();
  auto* sweep = app.add_subcommand("sweep", "Run the cutoff-scaling experiment");
  sweep->add_option("config", path, "Config JSON with a sweep section")->required();
  auto* check = app.add_subcommand("check", "Evaluate the diagnostics suite");
  check->add_option("target", path, "Run directory or config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ohs::cli::kInvalidInput;
  }
  opts.out = out;

  if (*simulate) return ohs::cli::cmd_simulate(path, opts, std::cout);
  if (*sweep) return ohs::cli::cmd_sweep(path, opts, std::cout);
  return ohs::cli::cmd_check(path, opts, std::cout);
}
