// SPDX-License-Identifier: Apache-2.0
#include "lueders/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lueders/rng.hpp"

namespace lueders {

const char* oracle_method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::kRandomSearch:
      return "random_search";
    case OracleMethod::kProjectedDescent:
      return "projected_descent";
    case OracleMethod::kBoth:
      return "both";
  }
  return "unknown";
}

namespace {

// Near-optimal candidates must essentially be the channel output. The
// band is on the squared distance: within it, the Pythagoras identity
// bounds the offset from the channel output by sqrt(band) < the state
// tolerance, so a flagged candidate means broken subspace geometry, not
// an unlucky draw.
constexpr double kUniquenessBandSq = 9e-9;
constexpr double kUniquenessStateTol = 1e-4;
constexpr double kStepFloor = 1e-6;

// Search-side view of a family element: per-eigenspace blocks with the
// mixture weight folded in, so feasibility is {Hermitian, PSD, total
// trace 1} and the embedding is a plain sum.
Eigen::MatrixXcd embed_blocks(const Observable& obs,
                              const std::vector<Eigen::MatrixXcd>& blocks) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(obs.dim(), obs.dim());
  for (int n = 0; n < obs.outcomes(); ++n) {
    const Eigen::MatrixXcd& v = obs.eigenbasis(n);
    out.noalias() += v * blocks[static_cast<std::size_t>(n)] * v.adjoint();
  }
  return out;
}

std::vector<Eigen::MatrixXcd> scaled_blocks(const ADefiniteFamilyElement& e) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(e.blocks.size());
  for (std::size_t n = 0; n < e.blocks.size(); ++n) {
    out.push_back(e.weights[n] * e.blocks[n].mat());
  }
  return out;
}

// Accumulates the per-candidate diagnostics against the fixed channel
// output. Candidates live in the projection's subspace, so the Pythagoras
// identity ||rho-c||^2 = ||rho-proj||^2 + ||proj-c||^2 must hold to
// round-off.
struct CandidateDiagnostics {
  const Observable& obs;
  const Eigen::MatrixXcd& rho;
  const Eigen::MatrixXcd& lueders;
  double lueders_distance;
  double max_defect = 0.0;
  double max_pythagoras = 0.0;
  long long uniqueness_violations = 0;

  void observe(const Eigen::MatrixXcd& c, double dist, bool check_defect,
               bool check_uniqueness) {
    const double to_lueders = (lueders - c).norm();
    const double residual = std::abs(dist * dist -
                                     lueders_distance * lueders_distance -
                                     to_lueders * to_lueders);
    max_pythagoras = std::max(max_pythagoras, residual);
    if (check_uniqueness &&
        dist * dist <=
            lueders_distance * lueders_distance + kUniquenessBandSq &&
        to_lueders > kUniquenessStateTol) {
      ++uniqueness_violations;
    }
    if (check_defect) {
      Eigen::MatrixXcd projected = Eigen::MatrixXcd::Zero(c.rows(), c.cols());
      for (int n = 0; n < obs.outcomes(); ++n) {
        const Eigen::MatrixXcd& p = obs.projector(n).mat();
        projected += p * c * p;
      }
      max_defect = std::max(max_defect, (projected - c).norm());
    }
  }
};

// The family element picked out by the measurement itself: weights are the
// outcome probabilities, blocks the conditional states. Outcomes below the
// probability floor carry the maximally mixed block; their weight is
// negligible by construction.
ADefiniteFamilyElement measurement_element(const Observable& obs,
                                           const DensityOperator& state) {
  const MeasurementResult result = measure(obs, state);
  std::vector<DensityOperator> blocks;
  blocks.reserve(static_cast<std::size_t>(obs.outcomes()));
  for (int n = 0; n < obs.outcomes(); ++n) {
    const auto& cond = result.conditional_states[static_cast<std::size_t>(n)];
    if (cond.has_value()) {
      blocks.push_back(*cond);
    } else {
      const Eigen::Index k = obs.rank(n);
      blocks.push_back(make_density(ComplexMatrix(
          Eigen::MatrixXcd::Identity(k, k) / static_cast<double>(k))));
    }
  }
  return make_family_element(obs, result.probabilities, std::move(blocks));
}

void require_matching_dims(const Observable& obs, const DensityOperator& state,
                           const char* where) {
  if (obs.dim() != state.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

OracleReport oracle_random_search(const Observable& obs,
                                  const DensityOperator& state,
                                  long long samples, std::uint64_t seed) {
  require_matching_dims(obs, state, "oracle_random_search");
  if (samples < 1) {
    throw std::invalid_argument("oracle_random_search: samples must be >= 1");
  }
  const Eigen::MatrixXcd& rho = state.mat();
  const Eigen::MatrixXcd lueders = superproject(obs, state.matrix()).mat();
  const double lueders_distance = (rho - lueders).norm();
  CandidateDiagnostics diag{obs, rho, lueders, lueders_distance};

  const long long defect_cadence = std::max<long long>(1, samples / 100);

  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd best_matrix;

  const auto consider = [&](const Eigen::MatrixXcd& c, bool check_defect) {
    const double dist = (rho - c).norm();
    diag.observe(c, dist, check_defect, /*check_uniqueness=*/true);
    if (dist < best) {
      best = dist;
      best_matrix = c;
    }
  };

  consider(embed_blocks(obs, scaled_blocks(measurement_element(obs, state))),
           /*check_defect=*/true);

  Rng rng(Rng::derive(seed, 0));
  for (long long i = 0; i < samples; ++i) {
    const ADefiniteFamilyElement e = random_family_element(obs, rng);
    consider(embed_blocks(obs, scaled_blocks(e)),
             /*check_defect=*/(i % defect_cadence) == 0);
  }
  // The reported minimum always gets the full feasibility check.
  diag.observe(best_matrix, best, /*check_defect=*/true,
               /*check_uniqueness=*/false);

  OracleReport report{.best_distance = best,
                      .lueders_distance = lueders_distance,
                      .gap = best - lueders_distance,
                      .best_state = make_density(ComplexMatrix(best_matrix)),
                      .iterations_used = samples + 1,
                      .method = OracleMethod::kRandomSearch,
                      .converged = true,
                      .max_family_defect = diag.max_defect,
                      .max_pythagoras_residual = diag.max_pythagoras,
                      .uniqueness_violations = diag.uniqueness_violations};
  return report;
}

OracleReport oracle_projected_descent(
    const Observable& obs, const DensityOperator& state, long long max_iter,
    double step, double tol, std::uint64_t seed,
    const std::optional<ADefiniteFamilyElement>& start) {
  require_matching_dims(obs, state, "oracle_projected_descent");
  if (max_iter < 1) {
    throw std::invalid_argument("oracle_projected_descent: max_iter >= 1");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("oracle_projected_descent: step must be > 0");
  }
  const Eigen::MatrixXcd& rho = state.mat();
  const Eigen::MatrixXcd lueders = superproject(obs, state.matrix()).mat();
  const double lueders_distance = (rho - lueders).norm();
  CandidateDiagnostics diag{obs, rho, lueders, lueders_distance};

  std::vector<Eigen::MatrixXcd> blocks;
  if (start.has_value()) {
    if (start->observable.dim() != obs.dim()) {
      throw std::invalid_argument("oracle_projected_descent: start dimension");
    }
    blocks = scaled_blocks(*start);
  } else {
    Rng rng(Rng::derive(seed, 1));
    blocks = scaled_blocks(random_family_element(obs, rng));
  }

  // Re-projection onto {Hermitian, PSD, total trace 1}: per-block
  // eigenvalue clipping, then one global trace rescale.
  const auto project_feasible = [&](std::vector<Eigen::MatrixXcd> b) {
    double total = 0.0;
    for (auto& block : b) {
      const Eigen::MatrixXcd h = (block + block.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
      Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
      block = solver.eigenvectors() * lambda.asDiagonal() *
              solver.eigenvectors().adjoint();
      total += lambda.sum();
    }
    if (total < 1e-12) {
      // Degenerate step wiped the spectrum; restart from the
      // block-diagonal maximally mixed state.
      for (std::size_t n = 0; n < b.size(); ++n) {
        const Eigen::Index k = b[n].rows();
        b[n] = Eigen::MatrixXcd::Identity(k, k) /
               static_cast<double>(obs.dim());
      }
    } else {
      for (auto& block : b) {
        block /= total;
      }
    }
    return b;
  };

  blocks = project_feasible(std::move(blocks));
  Eigen::MatrixXcd current = embed_blocks(obs, blocks);
  double f = (rho - current).squaredNorm();
  diag.observe(current, std::sqrt(f), /*check_defect=*/true,
               /*check_uniqueness=*/true);

  long long iterations = 0;
  bool converged = false;
  while (iterations < max_iter) {
    ++iterations;
    // Gradient of ||rho - embed(B)||^2 in block coordinates.
    std::vector<Eigen::MatrixXcd> stepped(blocks.size());
    const Eigen::MatrixXcd residual = current - rho;
    for (int n = 0; n < obs.outcomes(); ++n) {
      const Eigen::MatrixXcd& v = obs.eigenbasis(n);
      stepped[static_cast<std::size_t>(n)] =
          blocks[static_cast<std::size_t>(n)] -
          step * (2.0 * (v.adjoint() * residual * v));
    }
    std::vector<Eigen::MatrixXcd> candidate =
        project_feasible(std::move(stepped));
    const Eigen::MatrixXcd candidate_matrix = embed_blocks(obs, candidate);
    const double f_candidate = (rho - candidate_matrix).squaredNorm();
    if (f_candidate <= f) {
      double change_sq = 0.0;
      for (std::size_t n = 0; n < blocks.size(); ++n) {
        change_sq += (candidate[n] - blocks[n]).squaredNorm();
      }
      blocks = std::move(candidate);
      current = candidate_matrix;
      f = f_candidate;
      diag.observe(current, std::sqrt(f), /*check_defect=*/true,
                   /*check_uniqueness=*/true);
      if (std::sqrt(change_sq) < tol) {
        converged = true;
        break;
      }
    } else {
      step /= 2.0;
      if (step < kStepFloor) {
        // No decrease is possible at the step floor: the iterate has
        // settled to numerical precision.
        converged = true;
        break;
      }
    }
  }

  const double best_distance = std::sqrt(f);
  OracleReport report{.best_distance = best_distance,
                      .lueders_distance = lueders_distance,
                      .gap = best_distance - lueders_distance,
                      .best_state = make_density(ComplexMatrix(current)),
                      .iterations_used = iterations,
                      .method = OracleMethod::kProjectedDescent,
                      .converged = converged,
                      .max_family_defect = diag.max_defect,
                      .max_pythagoras_residual = diag.max_pythagoras,
                      .uniqueness_violations = diag.uniqueness_violations};
  return report;
}

OracleReport merge_reports(const OracleReport& a, const OracleReport& b) {
  OracleReport out = (a.best_distance <= b.best_distance) ? a : b;
  out.method = OracleMethod::kBoth;
  out.iterations_used = a.iterations_used + b.iterations_used;
  out.converged = a.converged && b.converged;
  out.max_family_defect = std::max(a.max_family_defect, b.max_family_defect);
  out.max_pythagoras_residual =
      std::max(a.max_pythagoras_residual, b.max_pythagoras_residual);
  out.uniqueness_violations =
      a.uniqueness_violations + b.uniqueness_violations;
  return out;
}

void check_minimality(const OracleReport& report, const Observable& obs,
                      const DensityOperator& state, double gap_tol,
                      double state_tol) {
  if (report.gap < -gap_tol) {
    throw MinimalityViolation(
        "minimality violation: a search candidate at distance " +
        std::to_string(report.best_distance) +
        " beat the channel output at distance " +
        std::to_string(report.lueders_distance) + " (gap " +
        std::to_string(report.gap) + ")");
  }
  if (state_tol > 0.0 && report.method == OracleMethod::kProjectedDescent) {
    const DensityOperator target = lueders_channel(obs, state);
    const double dist =
        hs_distance(report.best_state.matrix(), target.matrix());
    if (dist > state_tol) {
      throw MinimalityViolation(
          "minimality violation: descent settled " + std::to_string(dist) +
          " away from the channel output (allowed " +
          std::to_string(state_tol) + ")");
    }
  }
}

OracleReport verify_minimality(const Observable& obs,
                               const DensityOperator& state,
                               const MinimalityConfig& config) {
  const OracleReport search =
      oracle_random_search(obs, state, config.samples, config.seed);
  check_minimality(search, obs, state, config.gap_tol, 0.0);
  const OracleReport descent = oracle_projected_descent(
      obs, state, config.max_iter, config.step, config.descent_tol,
      config.seed);
  check_minimality(descent, obs, state, config.gap_tol, config.state_tol);
  return merge_reports(search, descent);
}

}  // namespace lueders
