// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lueders/cli.hpp"
#include "lueders/version.hpp"

namespace {

using lueders::cli::Command;
using lueders::cli::ExperimentConfig;
using lueders::cli::Format;

void add_format_option(CLI::App* app, ExperimentConfig& cfg,
                       std::string& format) {
  app->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("json");
  app->add_option("--out", cfg.out_path, "Report file (default: stdout)");
  app->add_option("--seed", cfg.seed, "Seed for every random draw");
  (void)cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional quantum measurement kernel: spectral "
               "decomposition, state updates, trace-rule probabilities, "
               "minimal-distance verification and outcome sampling."};
  app.set_version_flag("--version", std::string(lueders::kToolVersion));
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string format = "json";
  std::string dims_text = "2,3,4";

  CLI::App* decompose = app.add_subcommand(
      "decompose", "Spectral form of a Hermitian matrix file");
  decompose->add_option("--input", cfg.input_path, "Hermitian matrix file")
      ->required();
  decompose->add_option("--cluster-tol", cfg.cluster_tol,
                        "Eigenvalue clustering gap");
  add_format_option(decompose, cfg, format);

  CLI::App* measure = app.add_subcommand(
      "measure", "Outcome probabilities, conditional states, final state");
  measure->add_option("--observable", cfg.observable_path, "Observable file")
      ->required();
  measure->add_option("--state", cfg.state_path, "Density matrix file")
      ->required();
  measure->add_option("--cluster-tol", cfg.cluster_tol,
                      "Eigenvalue clustering gap");
  add_format_option(measure, cfg, format);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Search the block-diagonal family for a closer state");
  oracle->add_option("--observable", cfg.observable_path, "Observable file")
      ->required();
  oracle->add_option("--state", cfg.state_path, "Density matrix file")
      ->required();
  oracle->add_option("--samples", cfg.samples, "Random-search candidates");
  oracle->add_option("--cluster-tol", cfg.cluster_tol,
                     "Eigenvalue clustering gap");
  oracle
      ->add_option("--inject-gap", cfg.inject_gap,
                   "Testing hook: subtract this from the best distance")
      ->group("");  // hidden from help
  add_format_option(oracle, cfg, format);

  CLI::App* sample = app.add_subcommand(
      "sample", "Monte Carlo outcome frequencies from the trace rule");
  sample->add_option("--observable", cfg.observable_path, "Observable file")
      ->required();
  sample->add_option("--state", cfg.state_path, "Density matrix file")
      ->required();
  sample->add_option("--samples", cfg.samples, "Number of trials");
  sample->add_flag("--repeat", cfg.repeat,
                   "Measure, update, measure again per trial");
  sample->add_option("--cluster-tol", cfg.cluster_tol,
                     "Eigenvalue clustering gap");
  add_format_option(sample, cfg, format);

  CLI::App* verify =
      app.add_subcommand("verify", "Run every property suite");
  verify->add_option("--dims", dims_text, "Comma-separated dimensions")
      ->default_val("2,3,4");
  add_format_option(verify, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    app.exit(e);
    return lueders::cli::kExitUsage;
  }

  cfg.format = (format == "csv") ? Format::kCsv : Format::kJson;
  if (decompose->parsed()) {
    cfg.command = Command::kDecompose;
  } else if (measure->parsed()) {
    cfg.command = Command::kMeasure;
  } else if (oracle->parsed()) {
    cfg.command = Command::kOracle;
  } else if (sample->parsed()) {
    cfg.command = Command::kSample;
  } else {
    cfg.command = Command::kVerify;
  }

  if (verify->parsed()) {
    cfg.dims.clear();
    std::string token;
    std::istringstream stream(dims_text);
    while (std::getline(stream, token, ',')) {
      try {
        cfg.dims.push_back(std::stoi(token));
      } catch (const std::exception&) {
        std::cerr << "lueders: invalid --dims entry: " << token << '\n';
        return lueders::cli::kExitUsage;
      }
    }
  }

  return lueders::cli::run_command(cfg, std::cout, std::cerr);
}
