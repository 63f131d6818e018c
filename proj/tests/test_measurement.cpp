// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lueders/measurement.hpp"
#include "lueders/rng.hpp"
#include "support.hpp"

using namespace lueders;
using namespace lueders::testing;

TEST_CASE("outcome probabilities on fixed inputs") {
  const Observable sz = sigma_z_observable();
  SUBCASE("eigenstate certainty") {
    const std::vector<double> p =
        outcome_probabilities(sz, pure_state(basis_vector(2, 0)));
    CHECK(p[0] == doctest::Approx(0.0));  // eigenvalue -1
    CHECK(p[1] == doctest::Approx(1.0));  // eigenvalue +1
  }
  SUBCASE("balanced superposition") {
    // tr(P_n rho) by hand with P = |1><1|, |0><0|: both one half.
    const std::vector<double> p =
        outcome_probabilities(sz, pure_state(plus_vector()));
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
  }
  SUBCASE("transition probability for rank-1 events") {
    Rng rng(61);
    for (int t = 0; t < 50; ++t) {
      const UnitVector psi = random_unit_vector(3, rng);
      const UnitVector phi = random_unit_vector(3, rng);
      const double traced =
          hs_inner(ray_projector(phi), pure_state(psi).matrix()).real();
      CHECK(std::abs(traced - std::norm(overlap(phi, psi))) < 1e-12);
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(outcome_probabilities(sz, random_density(3, 1, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("lueders channel on fixed inputs") {
  const Observable sz = sigma_z_observable();
  SUBCASE("block-diagonal states are fixed points") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = 0.7;
    const DensityOperator rho = make_density(ComplexMatrix(d));
    CHECK(hs_distance(lueders_channel(sz, rho).matrix(), rho.matrix()) <
          1e-10);
  }
  SUBCASE("balanced superposition decoheres to the maximally mixed state") {
    const DensityOperator out = lueders_channel(sz, pure_state(plus_vector()));
    CHECK(max_err(out.mat(), Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("the single-outcome observable is the identity channel") {
    const Observable trivial =
        Observable::create({1.0}, {ComplexMatrix::identity(3)});
    const DensityOperator rho = random_density(3, 2, 13);
    CHECK(hs_distance(lueders_channel(trivial, rho).matrix(), rho.matrix()) <
          1e-12);
    CHECK(outcome_probabilities(trivial, rho)[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("channel equals superprojection and conserves probabilities") {
  Rng rng(67);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index dim = 2 + t % 7;
    const Observable obs = random_observable(dim, rng);
    const DensityOperator rho =
        random_density(dim, 1 + static_cast<Eigen::Index>(
                                    rng.uniform_index(dim)), rng);
    const DensityOperator out = lueders_channel(obs, rho);
    CHECK(hs_distance(out.matrix(), superproject(obs, rho.matrix())) < 1e-12);
    const std::vector<double> before = outcome_probabilities(obs, rho);
    const std::vector<double> after = outcome_probabilities(obs, out);
    for (std::size_t n = 0; n < before.size(); ++n) {
      CHECK(std::abs(after[n] - before[n]) < 1e-9);
    }
  }
}

TEST_CASE("conditional states") {
  const Observable sz = sigma_z_observable();
  const DensityOperator plus = pure_state(plus_vector());
  SUBCASE("balanced superposition collapses onto the basis states") {
    // P rho P / p by hand: outcome +1 keeps |0><0|.
    const DensityOperator up = conditional_state(sz, plus, 1);
    CHECK(max_err(up.mat(), ray_projector(basis_vector(2, 0)).mat()) < 1e-15);
    const DensityOperator down = conditional_state(sz, plus, 0);
    CHECK(max_err(down.mat(), ray_projector(basis_vector(2, 1)).mat()) <
          1e-15);
  }
  SUBCASE("an eigenstate is its own conditional state") {
    const DensityOperator e0 = pure_state(basis_vector(2, 0));
    CHECK(hs_distance(conditional_state(sz, e0, 1).matrix(), e0.matrix()) <
          1e-12);
  }
  SUBCASE("forbidden outcomes have no conditional state") {
    const DensityOperator e0 = pure_state(basis_vector(2, 0));
    CHECK_THROWS_AS(conditional_state(sz, e0, 0), std::domain_error);
    CHECK_THROWS_AS(conditional_state(sz, e0, 5), std::out_of_range);
  }
}

TEST_CASE("measure assembles a consistent result") {
  SUBCASE("maximally mixed input weights outcomes by eigenspace rank") {
    Rng rng(71);
    const Observable obs = random_observable(6, rng);
    const DensityOperator mixed = make_density(
        ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(6, 6) / 6.0)));
    const MeasurementResult result = measure(obs, mixed);
    for (int n = 0; n < obs.outcomes(); ++n) {
      CHECK(result.probabilities[static_cast<std::size_t>(n)] ==
            doctest::Approx(static_cast<double>(obs.rank(n)) / 6.0));
    }
  }
  SUBCASE("pure eigenstate: single outcome, state untouched") {
    const Observable sz = sigma_z_observable();
    const DensityOperator e0 = pure_state(basis_vector(2, 0));
    const MeasurementResult result = measure(sz, e0);
    CHECK(result.probabilities[1] == doctest::Approx(1.0));
    CHECK(result.probabilities[0] == doctest::Approx(0.0));
    CHECK(hs_distance(result.final_state.matrix(), e0.matrix()) < 1e-12);
    CHECK_FALSE(result.conditional_states[0].has_value());
  }
  SUBCASE("balanced superposition") {
    const Observable sz = sigma_z_observable();
    const MeasurementResult result = measure(sz, pure_state(plus_vector()));
    CHECK(result.probabilities[0] == doctest::Approx(0.5));
    CHECK(result.probabilities[1] == doctest::Approx(0.5));
    CHECK(max_err(result.final_state.mat(),
                  Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-15);
    CHECK(max_err(result.conditional_states[0]->mat(),
                  ray_projector(basis_vector(2, 1)).mat()) < 1e-15);
    CHECK(max_err(result.conditional_states[1]->mat(),
                  ray_projector(basis_vector(2, 0)).mat()) < 1e-15);
  }
  SUBCASE("the final state is the probability mixture of conditionals") {
    Rng rng(73);
    for (int t = 0; t < 20; ++t) {
      const Observable obs = random_observable(5, rng);
      const DensityOperator rho = random_density(5, 5, rng);
      const MeasurementResult result = measure(obs, rho);
      Eigen::MatrixXcd mixture = Eigen::MatrixXcd::Zero(5, 5);
      double psum = 0.0;
      for (int n = 0; n < obs.outcomes(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        REQUIRE(result.conditional_states[i].has_value());
        mixture += result.probabilities[i] * result.conditional_states[i]->mat();
        psum += result.probabilities[i];
      }
      CHECK(psum == doctest::Approx(1.0).epsilon(1e-9));
      CHECK((mixture - result.final_state.mat()).norm() < 1e-9);
    }
  }
}

TEST_CASE("certainty_check") {
  const ComplexMatrix p0 = ray_projector(basis_vector(2, 0));
  SUBCASE("eigenstate of the projector") {
    const CertaintyCheck c = certainty_check(pure_state(basis_vector(2, 0)), p0);
    CHECK(c.trace_one);
    CHECK(c.sandwich_fixed);
  }
  SUBCASE("maximally mixed state") {
    const DensityOperator mixed = make_density(
        ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2) / 2.0)));
    const CertaintyCheck c = certainty_check(mixed, p0);
    CHECK(c.trace_value == doctest::Approx(0.5));
    CHECK_FALSE(c.trace_one);
    CHECK_FALSE(c.sandwich_fixed);
  }
  SUBCASE("non-projectors are rejected") {
    CHECK_THROWS_AS(
        certainty_check(pure_state(basis_vector(2, 0)),
                        ComplexMatrix(Eigen::MatrixXcd(
                            Eigen::MatrixXcd::Identity(2, 2) * 0.5))),
        std::invalid_argument);
  }
}

TEST_CASE("certainty equivalence never splits on random and engineered pairs") {
  Rng rng(79);
  long long disagreements = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index dim = 2 + t % 7;
    const Eigen::MatrixXcd u = random_unitary(dim, rng);
    const Eigen::Index rank =
        1 + static_cast<Eigen::Index>(rng.uniform_index(dim - 1));
    const Eigen::MatrixXcd v = u.leftCols(rank);
    const ComplexMatrix projector(Eigen::MatrixXcd(v * v.adjoint()));
    DensityOperator rho = random_density(dim, 1 + t % dim, rng);
    if (t % 5 == 0) {
      // Engineered certainty: support inside range(projector).
      const DensityOperator inner = random_density(rank, rank, rng);
      rho = make_density(
          ComplexMatrix(Eigen::MatrixXcd(v * inner.mat() * v.adjoint())));
    }
    const CertaintyCheck c = certainty_check(rho, projector);
    if (c.trace_one != c.sandwich_fixed) {
      ++disagreements;
    }
    if (t % 5 == 0) {
      CHECK(c.trace_one);
      CHECK(c.sandwich_fixed);
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("verify_qnd") {
  Rng rng(83);
  SUBCASE("random pairs pass every check") {
    for (int t = 0; t < 30; ++t) {
      const Eigen::Index dim = 2 + t % 7;
      const Observable obs = random_observable(dim, rng);
      const QndReport report =
          verify_qnd(obs, random_density(dim, 1 + t % dim, rng));
      CHECK(report.conditionals_dispersion_free);
      CHECK(report.probabilities_invariant);
      CHECK(report.passed);
    }
  }
  SUBCASE("dispersion-free input keeps its sharp outcome") {
    const Observable sz = sigma_z_observable();
    const QndReport report = verify_qnd(sz, pure_state(basis_vector(2, 1)));
    CHECK(report.input_dispersion_free);
    CHECK(report.sharp_outcome == 0);  // |1> carries eigenvalue -1
    CHECK(report.sharp_value_preserved);
    CHECK(report.passed);
  }
  SUBCASE("measuring twice reproduces the distribution") {
    for (int t = 0; t < 20; ++t) {
      const Observable obs = random_observable(6, rng);
      const DensityOperator rho = random_density(6, 6, rng);
      const QndReport report = verify_qnd(obs, rho);
      CHECK(report.worst_probability_drift < 1e-9);
    }
  }
}
