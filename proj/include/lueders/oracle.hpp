// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "lueders/measurement.hpp"

namespace lueders {

enum class OracleMethod { kRandomSearch, kProjectedDescent, kBoth };

const char* oracle_method_name(OracleMethod m);

/// Result of searching the family of block-diagonal states for the one
/// closest to a given state, compared against the distance achieved by
/// the channel output. `gap` below -tol::kMinimalityGap means a search
/// point beat the channel and signals an implementation bug.
///
/// Diagnostics gathered along the way:
///  - max_family_defect: worst fixed-point residual ||c - sum P c P||_HS
///    over the spot-checked candidates (every candidate for the descent,
///    a 1-in-100 cadence plus the best candidate for the random search).
///  - max_pythagoras_residual: worst |d(rho,c)^2 - d(rho,proj)^2 -
///    d(proj,c)^2| over all candidates; near zero because every candidate
///    lies in the projection's subspace.
///  - uniqueness_violations: candidates within kMinimalityGap of the
///    optimal distance that are farther than 1e-4 from the channel output.
struct OracleReport {
  double best_distance = 0.0;
  double lueders_distance = 0.0;
  double gap = 0.0;  // best - lueders
  DensityOperator best_state;
  long long iterations_used = 0;
  OracleMethod method = OracleMethod::kRandomSearch;
  bool converged = true;  // descent only; random search is always true
  double max_family_defect = 0.0;
  double max_pythagoras_residual = 0.0;
  long long uniqueness_violations = 0;
};

/// Evaluates `samples` random family elements plus the element assembled
/// from the measurement weights and conditional states, and reports the
/// minimum distance. Single sequential draw stream: results for k samples
/// are a prefix of results for k' > k under the same seed.
OracleReport oracle_random_search(const Observable& obs,
                                  const DensityOperator& state,
                                  long long samples, std::uint64_t seed);

/// Minimizes ||rho - c||^2 over block-diagonal density operators by
/// gradient steps in per-eigenspace coordinates, re-projecting each
/// iterate onto {Hermitian, PSD, unit total trace} by eigenvalue clipping
/// and trace rescaling. The step halves on non-decrease with floor 1e-6.
/// Starts from `start` when given, otherwise from a random family element.
/// Non-convergence within max_iter is reported, not fatal.
OracleReport oracle_projected_descent(
    const Observable& obs, const DensityOperator& state,
    long long max_iter = 500, double step = 0.1, double tol = 1e-9,
    std::uint64_t seed = 0,
    const std::optional<ADefiniteFamilyElement>& start = std::nullopt);

struct MinimalityConfig {
  long long samples = 10000;
  long long max_iter = 500;
  double step = 0.1;
  double descent_tol = 1e-9;
  std::uint64_t seed = 0;
  double gap_tol = tol::kMinimalityGap;
  double state_tol = tol::kMinimalityState;
};

/// Raised when a search result is inconsistent with minimality of the
/// channel output; always a bug, never a property of the input.
class MinimalityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Merge of two reports over the same (observable, state) pair.
OracleReport merge_reports(const OracleReport& a, const OracleReport& b);

/// Throws MinimalityViolation if the report's gap is below -gap_tol, or
/// (for descent-backed reports when state_tol > 0) if the best state is
/// farther than state_tol from the channel output.
void check_minimality(const OracleReport& report, const Observable& obs,
                      const DensityOperator& state, double gap_tol,
                      double state_tol);

/// Runs both search methods, merges the reports, and checks the gap and
/// the descent end point. Throws MinimalityViolation on failure.
OracleReport verify_minimality(const Observable& obs,
                               const DensityOperator& state,
                               const MinimalityConfig& config = {});

}  // namespace lueders
