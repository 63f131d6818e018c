// SPDX-License-Identifier: Apache-2.0
#include "lueders/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "lueders/rng.hpp"

namespace lueders {

namespace {

// Inverse-CDF lookup. Zero-width bins can never be selected: a draw below
// their upper edge already matched an earlier bin.
int draw_outcome(const std::vector<double>& cumulative, double u) {
  for (std::size_t n = 0; n < cumulative.size(); ++n) {
    if (u < cumulative[n]) {
      return static_cast<int>(n);
    }
  }
  return static_cast<int>(cumulative.size()) - 1;
}

std::vector<double> cumulative_distribution(const std::vector<double>& probs) {
  std::vector<double> cumulative(probs.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    acc += probs[n];
    cumulative[n] = acc;
  }
  return cumulative;
}

SampleReport report_from_counts(std::vector<long long> counts,
                                std::vector<double> probs, long long n_trials,
                                std::uint64_t seed) {
  SampleReport report;
  report.counts = std::move(counts);
  report.probabilities = std::move(probs);
  report.n_trials = n_trials;
  report.seed = seed;
  report.frequencies.resize(report.counts.size());
  for (std::size_t n = 0; n < report.counts.size(); ++n) {
    report.frequencies[n] =
        static_cast<double>(report.counts[n]) / static_cast<double>(n_trials);
    report.max_abs_deviation =
        std::max(report.max_abs_deviation,
                 std::abs(report.frequencies[n] - report.probabilities[n]));
  }
  return report;
}

}  // namespace

SampleReport sample_outcomes(const Observable& obs,
                             const DensityOperator& state, long long n_trials,
                             std::uint64_t seed) {
  if (n_trials < 1) {
    throw std::invalid_argument("sample_outcomes: n_trials must be >= 1");
  }
  const std::vector<double> probs = outcome_probabilities(obs, state);
  const std::vector<double> cumulative = cumulative_distribution(probs);
  std::vector<long long> counts(probs.size(), 0);
  Rng rng(seed);
  for (long long t = 0; t < n_trials; ++t) {
    ++counts[static_cast<std::size_t>(draw_outcome(cumulative, rng.uniform()))];
  }
  return report_from_counts(std::move(counts), probs, n_trials, seed);
}

RepeatReport repeatability_run(const Observable& obs,
                               const DensityOperator& state,
                               long long n_trials, std::uint64_t seed) {
  if (n_trials < 1) {
    throw std::invalid_argument("repeatability_run: n_trials must be >= 1");
  }
  const std::vector<double> first_probs = outcome_probabilities(obs, state);
  const std::vector<double> first_cumulative =
      cumulative_distribution(first_probs);

  // Conditional update and second-shot distribution per first outcome,
  // computed once. Outcomes below the probability floor are never drawn.
  std::vector<std::vector<double>> second_cumulative(first_probs.size());
  for (int n = 0; n < obs.outcomes(); ++n) {
    if (first_probs[static_cast<std::size_t>(n)] < tol::kProbabilityFloor) {
      continue;
    }
    const DensityOperator updated = conditional_state(obs, state, n);
    second_cumulative[static_cast<std::size_t>(n)] =
        cumulative_distribution(outcome_probabilities(obs, updated));
  }

  std::vector<long long> first_counts(first_probs.size(), 0);
  std::vector<long long> second_counts(first_probs.size(), 0);
  long long agreements = 0;
  Rng rng(seed);
  for (long long t = 0; t < n_trials; ++t) {
    const int n1 = draw_outcome(first_cumulative, rng.uniform());
    ++first_counts[static_cast<std::size_t>(n1)];
    const int n2 =
        draw_outcome(second_cumulative[static_cast<std::size_t>(n1)],
                     rng.uniform());
    ++second_counts[static_cast<std::size_t>(n2)];
    if (n1 == n2) {
      ++agreements;
    }
  }

  RepeatReport report;
  report.first =
      report_from_counts(std::move(first_counts), first_probs, n_trials, seed);
  // The marginal distribution of the second outcome equals the first by
  // repetition invariance, so the same prediction applies.
  report.second = report_from_counts(std::move(second_counts), first_probs,
                                     n_trials, seed);
  report.agreements = agreements;
  return report;
}

double pearson_statistic(const SampleReport& report) {
  double chi2 = 0.0;
  for (std::size_t n = 0; n < report.counts.size(); ++n) {
    const double expected =
        static_cast<double>(report.n_trials) * report.probabilities[n];
    if (expected > 0.0) {
      const double diff = static_cast<double>(report.counts[n]) - expected;
      chi2 += diff * diff / expected;
    }
  }
  return chi2;
}

}  // namespace lueders
