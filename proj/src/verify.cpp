// SPDX-License-Identifier: Apache-2.0
#include "lueders/verify.hpp"

#include <cmath>

#include "lueders/rng.hpp"
#include "lueders/sampler.hpp"

// Property suites behind the `verify` command. Each suite draws from its
// own derived stream, so adding or reordering suites does not perturb the
// others.

namespace lueders {

namespace {

// 99.9% quantile of chi-square with 2 degrees of freedom: -2 ln(0.001).
constexpr double kChiSquare999Df2 = 13.815510557964274;

struct SuiteRunner {
  const VerifyOptions& options;
  std::vector<CheckResult> checks;
  std::uint64_t next_stream = 0;

  Rng stream() { return Rng(Rng::derive(options.seed, next_stream++)); }

  void add(std::string name, long long trials, double worst,
           double threshold) {
    checks.push_back(CheckResult{std::move(name), trials, worst, threshold,
                                 worst <= threshold});
  }
};

DensityOperator random_state(Eigen::Index dim, Rng& rng) {
  const Eigen::Index rank =
      1 + static_cast<Eigen::Index>(rng.uniform_index(
              static_cast<std::uint64_t>(dim)));
  return random_density(dim, rank, rng);
}

void suite_eigendecomposition(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 40; ++t, ++trials) {
      const ComplexMatrix h = random_hermitian(dim, rng);
      const EigenDecomposition eig = hermitian_eigendecompose(h);
      Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        rebuilt += eig.eigenvalues[static_cast<std::size_t>(i)] *
                   (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
      }
      worst = std::max(worst, (rebuilt - h.mat()).norm());
      worst = std::max(
          worst, max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                         Eigen::MatrixXcd::Identity(dim, dim)));
    }
  }
  r.add("eigendecomposition_reconstruction", trials, worst, 1e-9);
}

void suite_adjoint_involution(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 25; ++t, ++trials) {
      const ComplexMatrix a(random_complex_matrix(dim, rng));
      worst = std::max(worst, max_abs(adjoint(adjoint(a)).mat() - a.mat()));
    }
  }
  r.add("adjoint_involution", trials, worst, 0.0);
}

void suite_trace_cyclicity(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 25; ++t, ++trials) {
      const ComplexMatrix a(random_complex_matrix(dim, rng));
      const ComplexMatrix b(random_complex_matrix(dim, rng));
      worst = std::max(
          worst, std::abs(trace(matmul(a, b)) - trace(matmul(b, a))));
    }
  }
  r.add("trace_cyclicity", trials, worst, 1e-10);
}

void suite_spectral_decomposition(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst_ratio = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    const double threshold =
        std::max(1e-9, static_cast<double>(dim) * tol::kClusterDefault);
    for (int t = 0; t < 20; ++t, ++trials) {
      ComplexMatrix h = random_hermitian(dim, rng);
      if (t % 2 == 1 && dim >= 2) {
        // Exercise degenerate spectra: few distinct values, Haar-rotated.
        const Eigen::MatrixXcd u = random_unitary(dim, rng);
        Eigen::VectorXd lambda(dim);
        const int distinct = 1 + static_cast<int>(rng.uniform_index(
                                     static_cast<std::uint64_t>(dim)));
        for (Eigen::Index i = 0; i < dim; ++i) {
          lambda(i) = static_cast<double>(rng.uniform_index(
              static_cast<std::uint64_t>(distinct)));
        }
        h = ComplexMatrix(u * lambda.asDiagonal() * u.adjoint());
      }
      const Observable obs = spectral_decompose(h);
      Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(dim, dim);
      for (int n = 0; n < obs.outcomes(); ++n) {
        rebuilt += obs.eigenvalue(n) * obs.projector(n).mat();
      }
      worst_ratio =
          std::max(worst_ratio, (rebuilt - h.mat()).norm() / threshold);
    }
  }
  r.add("spectral_decomposition_reconstruction", trials, worst_ratio, 1.0);
}

void suite_family_feasibility(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 20; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const ADefiniteFamilyElement e = random_family_element(obs, rng);
      for (int n = 0; n < obs.outcomes(); ++n) {
        const Eigen::MatrixXcd b = embedded_block(e, n).mat();
        const Eigen::MatrixXcd& p = obs.projector(n).mat();
        worst = std::max(worst, (p * b * p - b).norm());
      }
      const DensityOperator assembled = assemble_family_element(e);
      worst = std::max(
          worst, (superproject(obs, assembled.matrix()).mat() - assembled.mat())
                     .norm());
    }
  }
  r.add("family_element_feasibility", trials, worst, 1e-9);
}

void suite_superprojector(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  double worst_contraction = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 25; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const SuperProjector sp{obs};
      const ComplexMatrix a(random_complex_matrix(dim, rng));
      const ComplexMatrix b(random_complex_matrix(dim, rng));
      const ComplexMatrix pb = superproject(sp, b);
      worst = std::max(worst, hs_distance(superproject(sp, pb), pb));
      worst = std::max(worst, std::abs(hs_inner(a, pb) -
                                       hs_inner(superproject(sp, a), b)));
      worst_contraction =
          std::max(worst_contraction, hs_norm(pb) - hs_norm(b));
    }
  }
  r.add("superprojector_idempotent_hermitian", trials, worst, 1e-9);
  r.add("superprojector_contraction", trials, worst_contraction, 1e-10);
}

void suite_projection_preserves_states(SuiteRunner& r) {
  Rng rng = r.stream();
  long long failures = 0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 25; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const DensityOperator state = random_state(dim, rng);
      try {
        make_density(superproject(obs, state.matrix()));
      } catch (const std::invalid_argument&) {
        ++failures;
      }
    }
  }
  r.add("projection_preserves_states", trials,
        static_cast<double>(failures), 0.0);
}

void suite_ray_distance_ordering(SuiteRunner& r) {
  Rng rng = r.stream();
  long long mismatches = 0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 80; ++t, ++trials) {
      const UnitVector psi = random_unit_vector(dim, rng);
      const UnitVector phi = phase_align(psi, random_unit_vector(dim, rng));
      const UnitVector chi = phase_align(psi, random_unit_vector(dim, rng));
      const double dv = vector_distance(psi, phi) - vector_distance(psi, chi);
      const double dp =
          hs_distance(ray_projector(psi), ray_projector(phi)) -
          hs_distance(ray_projector(psi), ray_projector(chi));
      if (std::abs(dv) <= 1e-10 || std::abs(dp) <= 1e-10) {
        continue;  // tie within slack
      }
      if ((dv < 0.0) != (dp < 0.0)) {
        ++mismatches;
      }
    }
  }
  r.add("ray_distance_ordering", trials, static_cast<double>(mismatches),
        0.0);
}

void suite_subspace_projection(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst_pythagoras = 0.0;
  double worst_match = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 20; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const std::vector<ComplexMatrix> basis = operator_subspace_basis(obs);
      const ComplexMatrix a(random_complex_matrix(dim, rng));
      const ComplexMatrix pa = project_onto_operator_subspace(basis, a);
      worst_match = std::max(worst_match,
                             hs_distance(pa, superproject(obs, a)));
      Eigen::MatrixXcd in_span = Eigen::MatrixXcd::Zero(dim, dim);
      for (const ComplexMatrix& e : basis) {
        in_span += rng.complex_normal() * e.mat();
      }
      const ComplexMatrix b(std::move(in_span));
      const double lhs = hs_distance(a, b);
      const double leg1 = hs_distance(a, pa);
      const double leg2 = hs_distance(pa, b);
      worst_pythagoras =
          std::max(worst_pythagoras,
                   std::abs(lhs * lhs - leg1 * leg1 - leg2 * leg2));
    }
  }
  r.add("subspace_projection_matches_superprojector", trials, worst_match,
        1e-9);
  r.add("subspace_pythagoras", trials, worst_pythagoras, 1e-9);
}

void suite_channel_identities(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst_equal = 0.0;
  double worst_conserved = 0.0;
  double worst_mixture = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 25; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const DensityOperator state = random_state(dim, rng);
      const DensityOperator updated = lueders_channel(obs, state);
      worst_equal = std::max(
          worst_equal,
          hs_distance(updated.matrix(), superproject(obs, state.matrix())));
      const std::vector<double> before = outcome_probabilities(obs, state);
      const std::vector<double> after = outcome_probabilities(obs, updated);
      for (std::size_t n = 0; n < before.size(); ++n) {
        worst_conserved =
            std::max(worst_conserved, std::abs(after[n] - before[n]));
      }
      const MeasurementResult result = measure(obs, state);
      Eigen::MatrixXcd mixture =
          Eigen::MatrixXcd::Zero(dim, dim);
      for (int n = 0; n < obs.outcomes(); ++n) {
        const auto& cond =
            result.conditional_states[static_cast<std::size_t>(n)];
        if (cond.has_value()) {
          mixture += result.probabilities[static_cast<std::size_t>(n)] *
                     cond->mat();
        }
      }
      worst_mixture = std::max(worst_mixture,
                               (mixture - result.final_state.mat()).norm());
    }
  }
  r.add("channel_equals_superprojection", trials, worst_equal, 1e-12);
  r.add("probability_conservation", trials, worst_conserved, 1e-9);
  r.add("conditional_mixture_reconstruction", trials, worst_mixture, 1e-9);
}

void suite_certainty_equivalence(SuiteRunner& r) {
  Rng rng = r.stream();
  long long disagreements = 0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    if (dim < 2) {
      continue;
    }
    for (int t = 0; t < 60; ++t, ++trials) {
      const Eigen::MatrixXcd u = random_unitary(dim, rng);
      const Eigen::Index rank =
          1 + static_cast<Eigen::Index>(
                  rng.uniform_index(static_cast<std::uint64_t>(dim - 1)));
      const Eigen::MatrixXcd v = u.leftCols(rank);
      const ComplexMatrix projector(Eigen::MatrixXcd(v * v.adjoint()));
      DensityOperator state = random_state(dim, rng);
      if (t % 5 == 0) {
        // Engineered certainty: build the state inside range(projector).
        const DensityOperator inner = random_density(rank, rank, rng);
        state = make_density(
            ComplexMatrix(Eigen::MatrixXcd(v * inner.mat() * v.adjoint())));
      }
      const CertaintyCheck check = certainty_check(state, projector);
      if (check.trace_one != check.sandwich_fixed) {
        ++disagreements;
      }
    }
  }
  r.add("certainty_equivalence", trials, static_cast<double>(disagreements),
        0.0);
}

void suite_trivial_observable(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    const Observable obs = Observable::create(
        {1.0}, {ComplexMatrix::identity(dim)});
    for (int t = 0; t < 10; ++t, ++trials) {
      const DensityOperator state = random_state(dim, rng);
      worst = std::max(
          worst, hs_distance(lueders_channel(obs, state).matrix(),
                             state.matrix()));
      worst = std::max(
          worst, std::abs(outcome_probabilities(obs, state)[0] - 1.0));
    }
  }
  r.add("trivial_observable_identity", trials, worst, 1e-12);
}

void suite_transition_probability(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 50; ++t, ++trials) {
      const UnitVector psi = random_unit_vector(dim, rng);
      const UnitVector phi = random_unit_vector(dim, rng);
      const double direct = std::norm(overlap(phi, psi));
      const double traced =
          hs_inner(ray_projector(phi), pure_state(psi).matrix()).real();
      worst = std::max(worst, std::abs(direct - traced));
    }
  }
  r.add("transition_probability", trials, worst, 1e-12);
}

void suite_block_weights(SuiteRunner& r) {
  Rng rng = r.stream();
  double worst = 0.0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 50; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const DensityOperator state = random_state(dim, rng);
      const DensityOperator updated = lueders_channel(obs, state);
      for (int n = 0; n < obs.outcomes(); ++n) {
        const double weight =
            hs_inner(obs.projector(n), updated.matrix()).real();
        const double direct =
            hs_inner(obs.projector(n), state.matrix()).real();
        worst = std::max(worst, std::abs(weight - direct));
      }
    }
  }
  r.add("block_weights_equal_trace_rule", trials, worst, 1e-10);
}

void suite_qnd(SuiteRunner& r) {
  Rng rng = r.stream();
  long long failures = 0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < 20; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      if (!verify_qnd(obs, random_state(dim, rng)).passed) {
        ++failures;
      }
      // Dispersion-free input: a pure state inside one eigenspace.
      const int n = static_cast<int>(rng.uniform_index(
          static_cast<std::uint64_t>(obs.outcomes())));
      const Eigen::MatrixXcd& v = obs.eigenbasis(n);
      Eigen::VectorXcd sharp_vec(dim);
      {
        Eigen::VectorXcd coeff(v.cols());
        for (Eigen::Index i = 0; i < v.cols(); ++i) {
          coeff(i) = rng.complex_normal();
        }
        sharp_vec = v * coeff;
      }
      const QndReport sharp_report =
          verify_qnd(obs, pure_state(UnitVector::normalized(sharp_vec)));
      if (!sharp_report.passed || !sharp_report.input_dispersion_free ||
          sharp_report.sharp_outcome != n) {
        ++failures;
      }
    }
  }
  r.add("qnd_properties", trials, static_cast<double>(failures), 0.0);
}

void suite_minimality(SuiteRunner& r) {
  Rng rng = r.stream();
  long long violations = 0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    for (int t = 0; t < r.options.oracle_pairs_per_dim; ++t, ++trials) {
      const Observable obs = random_observable(dim, rng);
      const DensityOperator state = random_state(dim, rng);
      MinimalityConfig config;
      config.samples = r.options.oracle_samples;
      config.seed = rng.next_u64();
      try {
        const OracleReport report = verify_minimality(obs, state, config);
        if (report.uniqueness_violations > 0 ||
            report.max_family_defect > 1e-8 ||
            report.max_pythagoras_residual > 1e-8) {
          ++violations;
        }
      } catch (const MinimalityViolation&) {
        ++violations;
      }
    }
  }
  r.add("minimality_search", trials, static_cast<double>(violations), 0.0);
}

void suite_sampling(SuiteRunner& r) {
  Rng rng = r.stream();

  // Binomial bound on the balanced two-outcome case, pinned stream.
  const Eigen::Vector2cd plus(Complex(1.0 / std::sqrt(2.0), 0.0),
                              Complex(1.0 / std::sqrt(2.0), 0.0));
  Eigen::MatrixXcd sz(2, 2);
  sz << 1.0, 0.0, 0.0, -1.0;
  const Observable sigma_z = spectral_decompose(ComplexMatrix(sz));
  const SampleReport balanced =
      sample_outcomes(sigma_z, pure_state(UnitVector(plus)), 100000,
                      rng.next_u64());
  r.add("sampling_frequency_binomial", balanced.n_trials,
        balanced.max_abs_deviation, 0.0063);

  // Pearson statistic on a three-outcome spectrum in dimension 4
  // (eigenspace ranks 2, 1, 1 under a Haar rotation).
  const Eigen::MatrixXcd u = random_unitary(4, rng);
  std::vector<ComplexMatrix> projectors;
  const Eigen::MatrixXcd v0 = u.leftCols(2);
  projectors.emplace_back(Eigen::MatrixXcd(v0 * v0.adjoint()));
  projectors.emplace_back(
      Eigen::MatrixXcd(u.col(2) * u.col(2).adjoint()));
  projectors.emplace_back(
      Eigen::MatrixXcd(u.col(3) * u.col(3).adjoint()));
  const Observable obs3 =
      Observable::create({-1.0, 0.5, 2.0}, std::move(projectors));
  const DensityOperator state = random_density(4, 4, rng);
  const SampleReport chi =
      sample_outcomes(obs3, state, 100000, rng.next_u64());
  r.add("sampling_chi_square", chi.n_trials, pearson_statistic(chi),
        kChiSquare999Df2);

  // Sequential measurement: the second outcome always repeats the first.
  long long disagreements = 0;
  long long trials = 0;
  for (int dim : r.options.dims) {
    const Observable obs = random_observable(dim, rng);
    const RepeatReport repeat =
        repeatability_run(obs, random_state(dim, rng), 2000, rng.next_u64());
    disagreements += repeat.first.n_trials - repeat.agreements;
    trials += repeat.first.n_trials;
  }
  r.add("sampling_repeatability", trials,
        static_cast<double>(disagreements), 0.0);
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  SuiteRunner runner{options, {}, 0};
  suite_eigendecomposition(runner);
  suite_adjoint_involution(runner);
  suite_trace_cyclicity(runner);
  suite_spectral_decomposition(runner);
  suite_family_feasibility(runner);
  suite_superprojector(runner);
  suite_projection_preserves_states(runner);
  suite_ray_distance_ordering(runner);
  suite_subspace_projection(runner);
  suite_channel_identities(runner);
  suite_certainty_equivalence(runner);
  suite_trivial_observable(runner);
  suite_transition_probability(runner);
  suite_block_weights(runner);
  suite_qnd(runner);
  suite_minimality(runner);
  suite_sampling(runner);

  VerifyReport report;
  report.options = options;
  report.checks = std::move(runner.checks);
  report.all_passed = true;
  for (const CheckResult& c : report.checks) {
    report.all_passed = report.all_passed && c.passed;
  }
  return report;
}

}  // namespace lueders
