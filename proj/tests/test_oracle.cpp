// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lueders/oracle.hpp"
#include "lueders/rng.hpp"
#include "support.hpp"

using namespace lueders;
using namespace lueders::testing;

namespace {

ADefiniteFamilyElement element_from_measurement(const Observable& obs,
                                                const DensityOperator& rho) {
  const MeasurementResult result = measure(obs, rho);
  std::vector<DensityOperator> blocks;
  for (int n = 0; n < obs.outcomes(); ++n) {
    const auto& cond = result.conditional_states[static_cast<std::size_t>(n)];
    if (cond.has_value()) {
      blocks.push_back(*cond);
    } else {
      const Eigen::Index k = obs.rank(n);
      blocks.push_back(make_density(ComplexMatrix(
          Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(k, k) / double(k)))));
    }
  }
  return make_family_element(obs, result.probabilities, std::move(blocks));
}

}  // namespace

TEST_CASE("random search on a block-diagonal input finds distance zero") {
  const Observable sz = sigma_z_observable();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  const DensityOperator rho = make_density(ComplexMatrix(d));
  const OracleReport report = oracle_random_search(sz, rho, 200, 5);
  CHECK(report.lueders_distance < 1e-12);
  CHECK(report.best_distance < 1e-12);
  CHECK(report.gap >= -1e-7);
}

TEST_CASE("random search on the balanced superposition") {
  const Observable sz = sigma_z_observable();
  const DensityOperator plus = pure_state(plus_vector());
  const OracleReport report = oracle_random_search(sz, plus, 10000, 11);
  // ||rho - I/2||_HS by hand: sqrt(tr((rho - I/2)^2)) = sqrt(1/2).
  CHECK(report.lueders_distance ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(report.gap >= -1e-7);
  CHECK(report.max_family_defect < 1e-8);
  CHECK(report.max_pythagoras_residual < 1e-8);
  CHECK(report.uniqueness_violations == 0);
}

TEST_CASE("random search minimum is non-increasing in the sample count") {
  Rng rng(13);
  const Observable obs = random_observable(4, rng);
  const DensityOperator rho = random_density(4, 3, rng);
  double previous = std::numeric_limits<double>::infinity();
  for (long long samples : {1LL, 10LL, 100LL, 10000LL}) {
    const OracleReport report = oracle_random_search(obs, rho, samples, 17);
    CHECK(report.best_distance <= previous + 1e-15);
    previous = report.best_distance;
  }
}

TEST_CASE("projected descent started at the channel output stays put") {
  Rng rng(19);
  const Observable obs = random_observable(4, rng);
  const DensityOperator rho = random_density(4, 4, rng);
  const ADefiniteFamilyElement start = element_from_measurement(obs, rho);
  const OracleReport report =
      oracle_projected_descent(obs, rho, 500, 0.1, 1e-9, 23, start);
  CHECK(report.converged);
  CHECK(std::abs(report.gap) < 1e-9);
  CHECK(report.iterations_used <= 3);
}

TEST_CASE("projected descent converges to the maximally mixed state") {
  const Observable sz = sigma_z_observable();
  const DensityOperator plus = pure_state(plus_vector());
  const OracleReport report = oracle_projected_descent(sz, plus, 500, 0.1,
                                                       1e-9, 29);
  CHECK(report.converged);
  CHECK(max_err(report.best_state.mat(),
                Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-6);
  CHECK(report.gap >= -1e-7);
  CHECK(report.gap < 1e-6);
}

TEST_CASE("projected descent matches the channel on a 3-2-1 spectrum") {
  Rng rng(31);
  // Observable with eigenspace dimensions (3, 2, 1) in dimension 6.
  const Eigen::MatrixXcd u = random_unitary(6, rng);
  std::vector<ComplexMatrix> projectors;
  const Eigen::MatrixXcd v0 = u.leftCols(3);
  const Eigen::MatrixXcd v1 = u.middleCols(3, 2);
  const Eigen::MatrixXcd v2 = u.rightCols(1);
  projectors.emplace_back(Eigen::MatrixXcd(v0 * v0.adjoint()));
  projectors.emplace_back(Eigen::MatrixXcd(v1 * v1.adjoint()));
  projectors.emplace_back(Eigen::MatrixXcd(v2 * v2.adjoint()));
  const Observable obs =
      Observable::create({-1.0, 0.0, 1.0}, std::move(projectors));
  const DensityOperator rho = random_density(6, 6, rng);
  const OracleReport report =
      oracle_projected_descent(obs, rho, 1000, 0.1, 1e-10, 37);
  const DensityOperator target = lueders_channel(obs, rho);
  CHECK(hs_distance(report.best_state.matrix(), target.matrix()) < 1e-5);
  CHECK(report.gap >= -1e-7);
}

TEST_CASE("verify_minimality") {
  SUBCASE("random pairs across dimensions") {
    Rng rng(41);
    for (Eigen::Index dim : {2, 3, 4, 8}) {
      for (int t = 0; t < 3; ++t) {
        const Observable obs = random_observable(dim, rng);
        const DensityOperator rho =
            random_density(dim, 1 + static_cast<Eigen::Index>(
                                        rng.uniform_index(dim)), rng);
        MinimalityConfig config;
        config.samples = 2000;
        config.seed = rng.next_u64();
        const OracleReport report = verify_minimality(obs, rho, config);
        CHECK(report.method == OracleMethod::kBoth);
        CHECK(report.gap >= -1e-7);
        CHECK(report.max_family_defect < 1e-8);
        CHECK(report.max_pythagoras_residual < 1e-8);
        CHECK(report.uniqueness_violations == 0);
      }
    }
  }
  SUBCASE("single-outcome observable: every state is optimal") {
    const Observable trivial =
        Observable::create({1.0}, {ComplexMatrix::identity(4)});
    const DensityOperator rho = random_density(4, 2, 43);
    const OracleReport report = verify_minimality(trivial, rho, {});
    CHECK(report.lueders_distance < 1e-12);
    CHECK(report.best_distance < 1e-12);
  }
  SUBCASE("a state already sharp for one outcome is kept") {
    // rho = |0><0| with projectors |1><1| and I - |1><1|: rho lies in the
    // second eigenspace, so the channel must not move it.
    const Eigen::Index dim = 3;
    Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(dim, dim);
    p1(1, 1) = 1.0;
    Eigen::MatrixXcd rest = Eigen::MatrixXcd::Identity(dim, dim) - p1;
    const Observable obs = Observable::create(
        {0.0, 1.0}, {ComplexMatrix(p1), ComplexMatrix(rest)});
    const DensityOperator rho = pure_state(basis_vector(dim, 0));
    const OracleReport report = verify_minimality(obs, rho, {});
    CHECK(report.lueders_distance < 1e-12);
    CHECK(report.best_distance < 1e-12);
    CHECK(hs_distance(lueders_channel(obs, rho).matrix(), rho.matrix()) <
          1e-12);
  }
}

TEST_CASE("check_minimality raises on an injected violation") {
  const Observable sz = sigma_z_observable();
  const DensityOperator plus = pure_state(plus_vector());
  OracleReport report = oracle_random_search(sz, plus, 100, 47);
  report.best_distance -= 0.1;
  report.gap = report.best_distance - report.lueders_distance;
  CHECK_THROWS_AS(check_minimality(report, sz, plus, 1e-7, 0.0),
                  MinimalityViolation);
}

TEST_CASE("merge keeps the better candidate and sums the bookkeeping") {
  const Observable sz = sigma_z_observable();
  const DensityOperator plus = pure_state(plus_vector());
  const OracleReport a = oracle_random_search(sz, plus, 50, 53);
  const OracleReport b = oracle_projected_descent(sz, plus, 200, 0.1, 1e-9, 59);
  const OracleReport merged = merge_reports(a, b);
  CHECK(merged.best_distance == std::min(a.best_distance, b.best_distance));
  CHECK(merged.iterations_used == a.iterations_used + b.iterations_used);
  CHECK(merged.method == OracleMethod::kBoth);
}

TEST_CASE("search rejects invalid arguments") {
  const Observable sz = sigma_z_observable();
  const DensityOperator plus = pure_state(plus_vector());
  CHECK_THROWS_AS(oracle_random_search(sz, plus, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(oracle_projected_descent(sz, plus, 0, 0.1, 1e-9, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_projected_descent(sz, plus, 10, 0.0, 1e-9, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_random_search(sz, random_density(3, 1, 1), 10, 1),
                  std::invalid_argument);
}
