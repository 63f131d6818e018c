// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lueders/verify.hpp"

namespace lueders::cli {

enum class Command { kDecompose, kMeasure, kOracle, kSample, kVerify };

enum class Format { kJson, kCsv };

/// One fully specified run of the tool. Path fields that a command does
/// not use stay empty. An empty out_path sends the report to stdout.
struct ExperimentConfig {
  Command command = Command::kVerify;
  std::string input_path;       // decompose: Hermitian matrix file
  std::string observable_path;  // measure/oracle/sample
  std::string state_path;       // measure/oracle/sample
  std::string out_path;
  Format format = Format::kJson;
  std::uint64_t seed = 0;
  long long samples = 10000;  // oracle candidates / sampler trials
  std::vector<int> dims = {2, 3, 4};
  double cluster_tol = 1e-8;
  bool repeat = false;      // sample: run the sequential-measurement pair
  double inject_gap = 0.0;  // oracle fault injection (testing hook)
};

// Exit codes: 0 success, 1 usage/validation, 2 I/O,
// 3 property or minimality failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitPropertyFailure = 3;

/// Executes the configured command, writes the report to out_path (or
/// `out` when out_path is empty) and returns the exit code. Diagnostics
/// go to `err`.
int run_command(const ExperimentConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace lueders::cli
