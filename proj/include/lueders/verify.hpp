// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lueders/oracle.hpp"

namespace lueders {

/// One property suite outcome. `worst` is the suite's aggregate defect
/// (a residual, a drift, or a violation count); the suite passes when
/// worst <= threshold.
struct CheckResult {
  std::string name;
  long long trials = 0;
  double worst = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::vector<int> dims = {2, 3, 4};
  std::uint64_t seed = 0;
  long long oracle_samples = 2000;
  int oracle_pairs_per_dim = 10;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;
  bool all_passed = false;
};

/// Runs every property suite at the given dims and seed. Deterministic:
/// identical options produce an identical report.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace lueders
