// SPDX-License-Identifier: Apache-2.0
#include "lueders/cli.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "lueders/io.hpp"
#include "lueders/version.hpp"

namespace lueders::cli {

namespace {

using io::JsonWriter;

void preamble(JsonWriter& w, const char* command,
              const ExperimentConfig& cfg) {
  w.key("schema").value(kReportSchema);
  w.key("tool").value(kToolName);
  w.key("version").value(kToolVersion);
  w.key("command").value(command);
  w.key("seed").value(cfg.seed);
}

void core_tolerances(JsonWriter& w) {
  w.key("hermiticity").value(tol::kHermiticity);
  w.key("trace_one").value(tol::kTraceOne);
  w.key("p_floor").value(tol::kProbabilityFloor);
}

std::string csv_bool(bool v) { return v ? "true" : "false"; }

void require_exists(const std::string& path, const char* what) {
  if (path.empty()) {
    throw std::invalid_argument(std::string("missing required ") + what +
                                " file path");
  }
  if (!std::filesystem::exists(path)) {
    throw io::IoError(std::string(what) + " file does not exist: " + path);
  }
}

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.cluster_tol > 0.0)) {
    throw std::invalid_argument("cluster tolerance must be positive");
  }
  if (cfg.samples < 1) {
    throw std::invalid_argument("samples must be >= 1");
  }
  if (cfg.dims.empty()) {
    throw std::invalid_argument("at least one dimension is required");
  }
  for (int d : cfg.dims) {
    if (d < 1 || d > 64) {
      throw std::invalid_argument("dimensions must lie in [1, 64]");
    }
  }
  switch (cfg.command) {
    case Command::kDecompose:
      require_exists(cfg.input_path, "input");
      break;
    case Command::kMeasure:
    case Command::kOracle:
    case Command::kSample:
      require_exists(cfg.observable_path, "observable");
      require_exists(cfg.state_path, "state");
      break;
    case Command::kVerify:
      break;
  }
}

struct CommandResult {
  std::string report;
  bool property_failure = false;
};

CommandResult run_decompose(const ExperimentConfig& cfg) {
  const ComplexMatrix m = io::parse_matrix_file(cfg.input_path);
  const Observable obs = spectral_decompose(m, cfg.cluster_tol);
  if (cfg.format == Format::kCsv) {
    std::string csv = "outcome,eigenvalue,rank\n";
    for (int n = 0; n < obs.outcomes(); ++n) {
      csv += std::to_string(n) + "," + io::format_double(obs.eigenvalue(n)) +
             "," + std::to_string(obs.rank(n)) + "\n";
    }
    return {std::move(csv), false};
  }
  JsonWriter w;
  w.begin_object();
  preamble(w, "decompose", cfg);
  w.key("tolerances").begin_object();
  w.key("cluster_tol").value(cfg.cluster_tol);
  core_tolerances(w);
  w.end_object();
  w.key("observable").begin_object();
  w.key("eigenvalues").begin_array();
  for (int n = 0; n < obs.outcomes(); ++n) {
    w.value(obs.eigenvalue(n));
  }
  w.end_array();
  w.key("projectors").begin_array();
  for (int n = 0; n < obs.outcomes(); ++n) {
    io::write_matrix(w, obs.projector(n));
  }
  w.end_array();
  w.end_object();
  w.end_object();
  return {w.str(), false};
}

CommandResult run_measure(const ExperimentConfig& cfg) {
  const Observable obs =
      io::parse_observable_file(cfg.observable_path, cfg.cluster_tol);
  const DensityOperator state = io::parse_state_file(cfg.state_path);
  const MeasurementResult result = measure(obs, state);
  if (cfg.format == Format::kCsv) {
    std::string csv = "outcome,eigenvalue,probability\n";
    for (int n = 0; n < obs.outcomes(); ++n) {
      csv += std::to_string(n) + "," + io::format_double(obs.eigenvalue(n)) +
             "," +
             io::format_double(result.probabilities[static_cast<std::size_t>(n)]) +
             "\n";
    }
    return {std::move(csv), false};
  }
  JsonWriter w;
  w.begin_object();
  preamble(w, "measure", cfg);
  w.key("tolerances").begin_object();
  w.key("cluster_tol").value(cfg.cluster_tol);
  core_tolerances(w);
  w.end_object();
  w.key("outcomes").begin_array();
  for (int n = 0; n < obs.outcomes(); ++n) {
    w.begin_object();
    w.key("index").value(n);
    w.key("eigenvalue").value(obs.eigenvalue(n));
    w.key("probability")
        .value(result.probabilities[static_cast<std::size_t>(n)]);
    w.key("conditional_state");
    const auto& cond = result.conditional_states[static_cast<std::size_t>(n)];
    if (cond.has_value()) {
      io::write_matrix(w, cond->matrix());
    } else {
      w.value_null();
    }
    w.end_object();
  }
  w.end_array();
  w.key("final_state");
  io::write_matrix(w, result.final_state.matrix());
  w.end_object();
  return {w.str(), false};
}

CommandResult run_oracle(const ExperimentConfig& cfg) {
  const Observable obs =
      io::parse_observable_file(cfg.observable_path, cfg.cluster_tol);
  const DensityOperator state = io::parse_state_file(cfg.state_path);
  const OracleReport search =
      oracle_random_search(obs, state, cfg.samples, cfg.seed);
  const OracleReport descent =
      oracle_projected_descent(obs, state, 500, 0.1, 1e-9, cfg.seed);
  OracleReport merged = merge_reports(search, descent);
  if (cfg.inject_gap != 0.0) {
    // Fault-injection hook for exercising the failure exit path.
    merged.best_distance -= cfg.inject_gap;
    merged.gap = merged.best_distance - merged.lueders_distance;
  }
  const double descent_offset =
      hs_distance(descent.best_state.matrix(),
                  lueders_channel(obs, state).matrix());
  const bool passed = merged.gap >= -tol::kMinimalityGap &&
                      descent_offset <= tol::kMinimalityState &&
                      merged.uniqueness_violations == 0;

  if (cfg.format == Format::kCsv) {
    std::string csv = "key,value\n";
    csv += "method," + std::string(oracle_method_name(merged.method)) + "\n";
    csv += "best_distance," + io::format_double(merged.best_distance) + "\n";
    csv +=
        "lueders_distance," + io::format_double(merged.lueders_distance) + "\n";
    csv += "gap," + io::format_double(merged.gap) + "\n";
    csv += "descent_offset," + io::format_double(descent_offset) + "\n";
    csv += "iterations_used," + std::to_string(merged.iterations_used) + "\n";
    csv += "converged," + csv_bool(merged.converged) + "\n";
    csv += "max_family_defect," + io::format_double(merged.max_family_defect) +
           "\n";
    csv += "max_pythagoras_residual," +
           io::format_double(merged.max_pythagoras_residual) + "\n";
    csv += "uniqueness_violations," +
           std::to_string(merged.uniqueness_violations) + "\n";
    csv += "passed," + csv_bool(passed) + "\n";
    return {std::move(csv), !passed};
  }

  JsonWriter w;
  w.begin_object();
  preamble(w, "oracle", cfg);
  w.key("tolerances").begin_object();
  w.key("cluster_tol").value(cfg.cluster_tol);
  w.key("gap_tol").value(tol::kMinimalityGap);
  w.key("state_tol").value(tol::kMinimalityState);
  core_tolerances(w);
  w.end_object();
  w.key("samples").value(cfg.samples);
  w.key("report").begin_object();
  w.key("method").value(oracle_method_name(merged.method));
  w.key("best_distance").value(merged.best_distance);
  w.key("lueders_distance").value(merged.lueders_distance);
  w.key("gap").value(merged.gap);
  w.key("descent_offset").value(descent_offset);
  w.key("iterations_used").value(merged.iterations_used);
  w.key("converged").value(merged.converged);
  w.key("max_family_defect").value(merged.max_family_defect);
  w.key("max_pythagoras_residual").value(merged.max_pythagoras_residual);
  w.key("uniqueness_violations").value(merged.uniqueness_violations);
  w.key("best_state");
  io::write_matrix(w, merged.best_state.matrix());
  w.end_object();
  w.key("passed").value(passed);
  w.end_object();
  return {w.str(), !passed};
}

void write_sample_body(JsonWriter& w, const Observable& obs,
                       const SampleReport& report) {
  w.key("outcomes").begin_array();
  for (int n = 0; n < obs.outcomes(); ++n) {
    w.begin_object();
    w.key("index").value(n);
    w.key("eigenvalue").value(obs.eigenvalue(n));
    w.key("count").value(report.counts[static_cast<std::size_t>(n)]);
    w.key("frequency").value(report.frequencies[static_cast<std::size_t>(n)]);
    w.key("probability")
        .value(report.probabilities[static_cast<std::size_t>(n)]);
    w.end_object();
  }
  w.end_array();
  w.key("max_abs_deviation").value(report.max_abs_deviation);
}

CommandResult run_sample(const ExperimentConfig& cfg) {
  const Observable obs =
      io::parse_observable_file(cfg.observable_path, cfg.cluster_tol);
  const DensityOperator state = io::parse_state_file(cfg.state_path);
  if (!cfg.repeat) {
    const SampleReport report =
        sample_outcomes(obs, state, cfg.samples, cfg.seed);
    if (cfg.format == Format::kCsv) {
      std::string csv = "outcome,eigenvalue,count,frequency,probability\n";
      for (int n = 0; n < obs.outcomes(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        csv += std::to_string(n) + "," +
               io::format_double(obs.eigenvalue(n)) + "," +
               std::to_string(report.counts[i]) + "," +
               io::format_double(report.frequencies[i]) + "," +
               io::format_double(report.probabilities[i]) + "\n";
      }
      return {std::move(csv), false};
    }
    JsonWriter w;
    w.begin_object();
    preamble(w, "sample", cfg);
    w.key("tolerances").begin_object();
    w.key("cluster_tol").value(cfg.cluster_tol);
    core_tolerances(w);
    w.end_object();
    w.key("mode").value("single");
    w.key("n_trials").value(report.n_trials);
    write_sample_body(w, obs, report);
    w.end_object();
    return {w.str(), false};
  }

  const RepeatReport report =
      repeatability_run(obs, state, cfg.samples, cfg.seed);
  if (cfg.format == Format::kCsv) {
    std::string csv = "key,value\n";
    csv += "n_trials," + std::to_string(report.first.n_trials) + "\n";
    csv += "agreements," + std::to_string(report.agreements) + "\n";
    csv += "\noutcome,eigenvalue,first_count,second_count,probability\n";
    for (int n = 0; n < obs.outcomes(); ++n) {
      const auto i = static_cast<std::size_t>(n);
      csv += std::to_string(n) + "," + io::format_double(obs.eigenvalue(n)) +
             "," + std::to_string(report.first.counts[i]) + "," +
             std::to_string(report.second.counts[i]) + "," +
             io::format_double(report.first.probabilities[i]) + "\n";
    }
    return {std::move(csv), false};
  }
  JsonWriter w;
  w.begin_object();
  preamble(w, "sample", cfg);
  w.key("tolerances").begin_object();
  w.key("cluster_tol").value(cfg.cluster_tol);
  core_tolerances(w);
  w.end_object();
  w.key("mode").value("repeat");
  w.key("n_trials").value(report.first.n_trials);
  w.key("agreements").value(report.agreements);
  w.key("first").begin_object();
  write_sample_body(w, obs, report.first);
  w.end_object();
  w.key("second").begin_object();
  write_sample_body(w, obs, report.second);
  w.end_object();
  w.end_object();
  return {w.str(), false};
}

CommandResult run_verify_command(const ExperimentConfig& cfg) {
  VerifyOptions options;
  options.dims = cfg.dims;
  options.seed = cfg.seed;
  const VerifyReport report = run_verify(options);
  if (cfg.format == Format::kCsv) {
    std::string csv = "check,trials,worst,threshold,passed\n";
    for (const CheckResult& c : report.checks) {
      csv += c.name + "," + std::to_string(c.trials) + "," +
             io::format_double(c.worst) + "," +
             io::format_double(c.threshold) + "," + csv_bool(c.passed) + "\n";
    }
    return {std::move(csv), !report.all_passed};
  }
  JsonWriter w;
  w.begin_object();
  preamble(w, "verify", cfg);
  w.key("dims").begin_array();
  for (int d : report.options.dims) {
    w.value(d);
  }
  w.end_array();
  w.key("oracle_samples").value(report.options.oracle_samples);
  w.key("oracle_pairs_per_dim").value(report.options.oracle_pairs_per_dim);
  w.key("tolerances").begin_object();
  w.key("cluster_tol").value(cfg.cluster_tol);
  w.key("gap_tol").value(tol::kMinimalityGap);
  w.key("state_tol").value(tol::kMinimalityState);
  core_tolerances(w);
  w.end_object();
  w.key("checks").begin_array();
  for (const CheckResult& c : report.checks) {
    w.begin_object();
    w.key("name").value(c.name);
    w.key("trials").value(c.trials);
    w.key("worst").value(c.worst);
    w.key("threshold").value(c.threshold);
    w.key("passed").value(c.passed);
    w.end_object();
  }
  w.end_array();
  w.key("all_passed").value(report.all_passed);
  w.end_object();
  return {w.str(), !report.all_passed};
}

}  // namespace

int run_command(const ExperimentConfig& cfg, std::ostream& out,
                std::ostream& err) {
  try {
    validate(cfg);
    CommandResult result;
    switch (cfg.command) {
      case Command::kDecompose:
        result = run_decompose(cfg);
        break;
      case Command::kMeasure:
        result = run_measure(cfg);
        break;
      case Command::kOracle:
        result = run_oracle(cfg);
        break;
      case Command::kSample:
        result = run_sample(cfg);
        break;
      case Command::kVerify:
        result = run_verify_command(cfg);
        break;
    }
    result.report += '\n';
    if (cfg.out_path.empty()) {
      out << result.report;
    } else {
      io::write_file(cfg.out_path, result.report);
    }
    if (result.property_failure) {
      err << "lueders: property checks failed\n";
      return kExitPropertyFailure;
    }
    return kExitOk;
  } catch (const io::IoError& e) {
    err << "lueders: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const io::ParseError& e) {
    err << "lueders: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MinimalityViolation& e) {
    err << "lueders: " << e.what() << '\n';
    return kExitPropertyFailure;
  } catch (const std::invalid_argument& e) {
    err << "lueders: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "lueders: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "lueders: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Internal inconsistencies (probability sums, solver failures) are
    // property failures, not usage errors.
    err << "lueders: internal check failed: " << e.what() << '\n';
    return kExitPropertyFailure;
  }
}

}  // namespace lueders::cli
