// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lueders/measurement.hpp"

namespace lueders {

/// Outcome counts from repeated single-shot measurements of one prepared
/// state, next to the predicted distribution.
struct SampleReport {
  std::vector<long long> counts;
  std::vector<double> frequencies;   // counts / n_trials, exactly
  std::vector<double> probabilities; // trace-rule prediction
  double max_abs_deviation = 0.0;    // max_n |frequency - probability|
  long long n_trials = 0;
  std::uint64_t seed = 0;
};

/// i.i.d. categorical draws from the outcome distribution via inverse CDF
/// on a seeded uniform stream; deterministic given seed.
SampleReport sample_outcomes(const Observable& obs,
                             const DensityOperator& state, long long n_trials,
                             std::uint64_t seed);

/// Measure, update to the conditional state, measure again. The second
/// outcome equals the first in every trial; `agreements` counts them.
struct RepeatReport {
  SampleReport first;
  SampleReport second;
  long long agreements = 0;
};

RepeatReport repeatability_run(const Observable& obs,
                               const DensityOperator& state,
                               long long n_trials, std::uint64_t seed);

/// Pearson statistic sum_n (count_n - N p_n)^2 / (N p_n) over outcomes
/// with p_n > 0.
double pearson_statistic(const SampleReport& report);

}  // namespace lueders
