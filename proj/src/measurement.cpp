// SPDX-License-Identifier: Apache-2.0
#include "lueders/measurement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lueders {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kCertaintyTraceTol = 1e-9;
constexpr double kCertaintySandwichTol = 1e-8;

double clipped_probability(double p, const char* where) {
  if (p < -tol::kProbabilityClip || p > 1.0 + tol::kProbabilityClip) {
    throw std::logic_error(std::string(where) +
                           ": probability out of range: " + std::to_string(p));
  }
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

std::vector<double> outcome_probabilities(const Observable& obs,
                                          const DensityOperator& state) {
  if (obs.dim() != state.dim()) {
    throw std::invalid_argument("outcome_probabilities: dimension mismatch");
  }
  std::vector<double> probs(static_cast<std::size_t>(obs.outcomes()));
  double sum = 0.0;
  for (int n = 0; n < obs.outcomes(); ++n) {
    // P_n is Hermitian, so tr(P_n rho) = (P_n, rho)_HS.
    const double p = hs_inner(obs.projector(n), state.matrix()).real();
    probs[static_cast<std::size_t>(n)] =
        clipped_probability(p, "outcome_probabilities");
    sum += probs[static_cast<std::size_t>(n)];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::logic_error("outcome_probabilities: probabilities sum to " +
                           std::to_string(sum));
  }
  return probs;
}

DensityOperator lueders_channel(const Observable& obs,
                                const DensityOperator& state) {
  if (obs.dim() != state.dim()) {
    throw std::invalid_argument("lueders_channel: dimension mismatch");
  }
  return make_density(superproject(obs, state.matrix()));
}

DensityOperator conditional_state(const Observable& obs,
                                  const DensityOperator& state, int outcome,
                                  double p_floor) {
  if (obs.dim() != state.dim()) {
    throw std::invalid_argument("conditional_state: dimension mismatch");
  }
  if (outcome < 0 || outcome >= obs.outcomes()) {
    throw std::out_of_range("conditional_state: outcome index " +
                            std::to_string(outcome));
  }
  const Eigen::MatrixXcd& p = obs.projector(outcome).mat();
  const double prob = clipped_probability(
      hs_inner(obs.projector(outcome), state.matrix()).real(),
      "conditional_state");
  if (prob < p_floor) {
    throw std::domain_error("conditional_state: outcome " +
                            std::to_string(outcome) + " has probability " +
                            std::to_string(prob) + " below the floor");
  }
  return make_density(ComplexMatrix((p * state.mat() * p) / prob));
}

MeasurementResult measure(const Observable& obs, const DensityOperator& state,
                          double p_floor) {
  std::vector<double> probs = outcome_probabilities(obs, state);
  std::vector<std::optional<DensityOperator>> conditionals;
  conditionals.reserve(probs.size());
  for (int n = 0; n < obs.outcomes(); ++n) {
    if (probs[static_cast<std::size_t>(n)] >= p_floor) {
      conditionals.emplace_back(conditional_state(obs, state, n, p_floor));
    } else {
      conditionals.emplace_back(std::nullopt);
    }
  }
  return MeasurementResult{obs, std::move(probs), std::move(conditionals),
                           lueders_channel(obs, state)};
}

CertaintyCheck certainty_check(const DensityOperator& state,
                               const ComplexMatrix& projector) {
  if (state.dim() != projector.dim()) {
    throw std::invalid_argument("certainty_check: dimension mismatch");
  }
  const Eigen::MatrixXcd& p = projector.mat();
  if (hermiticity_defect(p) > 1e-9 || max_abs(p * p - p) > 1e-9) {
    throw std::invalid_argument("certainty_check: input is not a projector");
  }
  CertaintyCheck out;
  out.trace_value = hs_inner(projector, state.matrix()).real();
  out.trace_one = std::abs(out.trace_value - 1.0) < kCertaintyTraceTol;
  out.sandwich_deviation = (p * state.mat() * p - state.mat()).norm();
  out.sandwich_fixed = out.sandwich_deviation < kCertaintySandwichTol;
  return out;
}

QndReport verify_qnd(const Observable& obs, const DensityOperator& state) {
  const MeasurementResult result = measure(obs, state);
  QndReport report{};

  // (a) conditional states are dispersion-free for their own outcome.
  report.worst_conditional_deviation = 0.0;
  for (int n = 0; n < obs.outcomes(); ++n) {
    const auto& cond = result.conditional_states[static_cast<std::size_t>(n)];
    if (!cond.has_value()) {
      continue;
    }
    const double p = hs_inner(obs.projector(n), cond->matrix()).real();
    report.worst_conditional_deviation =
        std::max(report.worst_conditional_deviation, std::abs(p - 1.0));
  }
  report.conditionals_dispersion_free =
      report.worst_conditional_deviation < 1e-9;

  // (b) a sharp input stays sharp with the same outcome.
  report.sharp_outcome = -1;
  for (int n = 0; n < obs.outcomes(); ++n) {
    if (result.probabilities[static_cast<std::size_t>(n)] >= 1.0 - 1e-9) {
      report.sharp_outcome = n;
      break;
    }
  }
  report.input_dispersion_free = report.sharp_outcome >= 0;
  if (report.input_dispersion_free) {
    const double p_final =
        hs_inner(obs.projector(report.sharp_outcome), result.final_state.matrix())
            .real();
    report.sharp_value_preserved = std::abs(p_final - 1.0) < 1e-9;
  } else {
    report.sharp_value_preserved = true;  // vacuous
  }

  // Repetition invariance: measuring the final state reproduces the
  // outcome distribution.
  const std::vector<double> repeat =
      outcome_probabilities(obs, result.final_state);
  report.worst_probability_drift = 0.0;
  for (std::size_t n = 0; n < repeat.size(); ++n) {
    report.worst_probability_drift =
        std::max(report.worst_probability_drift,
                 std::abs(repeat[n] - result.probabilities[n]));
  }
  report.probabilities_invariant = report.worst_probability_drift < 1e-9;

  report.passed = report.conditionals_dispersion_free &&
                  report.sharp_value_preserved &&
                  report.probabilities_invariant;
  return report;
}

}  // namespace lueders
