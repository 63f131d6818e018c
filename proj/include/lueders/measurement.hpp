// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "lueders/hs_geometry.hpp"

namespace lueders {

/// Outcome of a non-selective measurement: probabilities p_n = tr(P_n rho),
/// conditional states P_n rho P_n / p_n (absent when p_n < p_floor), and
/// the final state sum_n P_n rho P_n.
struct MeasurementResult {
  Observable observable;
  std::vector<double> probabilities;
  std::vector<std::optional<DensityOperator>> conditional_states;
  DensityOperator final_state;
};

/// p_n = Re tr(P_n rho), clipped to [0, 1]. Round-off below
/// -tol::kProbabilityClip or a probability sum off 1 by more than 1e-9 is
/// an internal-consistency error.
std::vector<double> outcome_probabilities(const Observable& obs,
                                          const DensityOperator& state);

/// Non-selective state update rho -> sum_n P_n rho P_n. Fixed points are
/// exactly the states that are block-diagonal across the eigenspaces.
DensityOperator lueders_channel(const Observable& obs,
                                const DensityOperator& state);

/// P_n rho P_n / tr(P_n rho) for outcome n. Errors when the outcome index
/// is out of range or the probability is below p_floor.
DensityOperator conditional_state(const Observable& obs,
                                  const DensityOperator& state, int outcome,
                                  double p_floor = tol::kProbabilityFloor);

MeasurementResult measure(const Observable& obs, const DensityOperator& state,
                          double p_floor = tol::kProbabilityFloor);

/// The two sides of the certainty equivalence tr(rho p) = 1 <=> p rho p =
/// rho, evaluated independently. They must agree for any density operator
/// and projector; a disagreement indicates a numerical defect.
struct CertaintyCheck {
  bool trace_one;       // |tr(rho p) - 1| < 1e-9
  bool sandwich_fixed;  // ||p rho p - rho||_HS < 1e-8
  double trace_value;
  double sandwich_deviation;
};

CertaintyCheck certainty_check(const DensityOperator& state,
                               const ComplexMatrix& projector);

/// Non-demolition checks for the channel: (a) every conditional state is
/// dispersion-free in its own outcome; (b) a dispersion-free input keeps
/// its sharp value; and repeated measurement leaves the outcome
/// distribution invariant.
struct QndReport {
  bool conditionals_dispersion_free;
  double worst_conditional_deviation;
  bool input_dispersion_free;
  int sharp_outcome;  // -1 when the input has no sharp value
  bool sharp_value_preserved;
  bool probabilities_invariant;
  double worst_probability_drift;
  bool passed;
};

QndReport verify_qnd(const Observable& obs, const DensityOperator& state);

}  // namespace lueders
