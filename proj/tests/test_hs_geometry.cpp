// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lueders/hs_geometry.hpp"
#include "lueders/rng.hpp"
#include "support.hpp"

using namespace lueders;
using namespace lueders::testing;

TEST_CASE("hs_inner on fixed inputs") {
  CHECK(hs_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
        Complex(2.0, 0.0));
  // Pauli matrices are HS-orthogonal: tr(XZ) = 0 by direct computation.
  CHECK(std::abs(hs_inner(pauli_x(), pauli_z())) < 1e-15);
  const ComplexMatrix pure = ray_projector(plus_vector());
  CHECK(hs_inner(pure, pure).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(
      hs_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
      std::invalid_argument);
}

TEST_CASE("hs_inner is conjugate symmetric and linear in the second slot") {
  Rng rng(5);
  const ComplexMatrix a(random_complex_matrix(4, rng));
  const ComplexMatrix b(random_complex_matrix(4, rng));
  const ComplexMatrix c(random_complex_matrix(4, rng));
  CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
  const Complex alpha(0.3, -1.2);
  const ComplexMatrix combo(Eigen::MatrixXcd(alpha * b.mat() + c.mat()));
  CHECK(std::abs(hs_inner(a, combo) -
                 (alpha * hs_inner(a, b) + hs_inner(a, c))) < 1e-12);
}

TEST_CASE("hs_distance on fixed inputs") {
  const ComplexMatrix p0 = ray_projector(basis_vector(2, 0));
  const ComplexMatrix p1 = ray_projector(basis_vector(2, 1));
  CHECK(hs_distance(p0, p0) == 0.0);
  // Orthogonal rays: overlap 0 in the distance formula gives sqrt(2).
  CHECK(hs_distance(p0, p1) == doctest::Approx(std::sqrt(2.0)));

  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const UnitVector psi = random_unit_vector(3, rng);
    const UnitVector phi = random_unit_vector(3, rng);
    const double o = std::abs(overlap(phi, psi));
    const double expect = std::sqrt(std::max(0.0, 2.0 - 2.0 * o * o));
    CHECK(hs_distance(ray_projector(psi), ray_projector(phi)) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("superproject on fixed inputs") {
  const Observable obs = sigma_z_observable();
  SUBCASE("block-diagonal operators are fixed") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = Complex(0.3, -0.4);  // diagonal, so it commutes with both
    d(1, 1) = Complex(0.7, 0.1);   // projectors
    const ComplexMatrix b(d);
    CHECK(max_err(superproject(obs, b).mat(), b.mat()) < 1e-15);
  }
  SUBCASE("purely off-diagonal operators are annihilated") {
    CHECK(max_abs(superproject(obs, pauli_x()).mat()) < 1e-15);
  }
  SUBCASE("idempotency on random input") {
    Rng rng(23);
    const ComplexMatrix b(random_complex_matrix(2, rng));
    const ComplexMatrix once = superproject(obs, b);
    CHECK(hs_distance(superproject(obs, once), once) < 1e-10);
  }
}

TEST_CASE("superprojector properties on random observables") {
  Rng rng(29);
  for (Eigen::Index dim = 2; dim <= 12; dim += 2) {
    for (int t = 0; t < 10; ++t) {
      const Observable obs = random_observable(dim, rng);
      const SuperProjector sp{obs};
      const ComplexMatrix a(random_complex_matrix(dim, rng));
      const ComplexMatrix b(random_complex_matrix(dim, rng));
      const ComplexMatrix pb = superproject(sp, b);
      // Idempotent and Hermitian on HS space.
      CHECK(hs_distance(superproject(sp, pb), pb) < 1e-9);
      CHECK(std::abs(hs_inner(a, pb) - hs_inner(superproject(sp, a), b)) <
            1e-9);
      // Contraction.
      CHECK(hs_norm(pb) <= hs_norm(b) + 1e-10);
    }
  }
}

TEST_CASE("projection of a state is a state") {
  Rng rng(37);
  for (int t = 0; t < 30; ++t) {
    const Observable obs = random_observable(5, rng);
    const DensityOperator rho = random_density(5, 1 + t % 5, rng);
    CHECK_NOTHROW(make_density(superproject(obs, rho.matrix())));
  }
}

TEST_CASE("phase_align") {
  const UnitVector plus = plus_vector();
  SUBCASE("identical vectors stay put") {
    const UnitVector aligned = phase_align(plus, plus);
    CHECK((aligned.vec() - plus.vec()).norm() < 1e-15);
  }
  SUBCASE("a pure phase is removed") {
    const Complex phase = std::polar(1.0, 1.234);
    const UnitVector rotated(Eigen::VectorXcd(phase * plus.vec()));
    const UnitVector aligned = phase_align(plus, rotated);
    CHECK((aligned.vec() - plus.vec()).norm() < 1e-12);
  }
  SUBCASE("orthogonal vectors are left unchanged") {
    const UnitVector e0 = basis_vector(2, 0);
    const UnitVector e1 = basis_vector(2, 1);
    const UnitVector aligned = phase_align(e0, e1);
    CHECK((aligned.vec() - e1.vec()).norm() == 0.0);
  }
  SUBCASE("the aligned overlap is real and nonnegative") {
    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
      const UnitVector psi = random_unit_vector(4, rng);
      const UnitVector phi = phase_align(psi, random_unit_vector(4, rng));
      const Complex o = overlap(phi, psi);
      CHECK(o.imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(o.real() >= -1e-15);
    }
  }
}

TEST_CASE("vector_distance on fixed inputs") {
  const UnitVector plus = plus_vector();
  // The square root turns unit round-off in the overlap into ~sqrt(eps).
  CHECK(vector_distance(plus, plus) < 1e-7);
  CHECK(vector_distance(basis_vector(2, 0), basis_vector(2, 1)) ==
        doctest::Approx(std::sqrt(2.0)));
  // Overlap magnitude one half plugs in as sqrt(2 - 1) = 1.
  Eigen::VectorXcd v(2);
  v << 0.5, std::sqrt(3.0) / 2.0;
  CHECK(vector_distance(basis_vector(2, 0), UnitVector(v)) ==
        doctest::Approx(1.0));
}

TEST_CASE("ray ordering matches projector ordering") {
  Rng rng(43);
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index dim = 2 + t % 4;
    const UnitVector psi = random_unit_vector(dim, rng);
    const UnitVector phi = phase_align(psi, random_unit_vector(dim, rng));
    const UnitVector chi = phase_align(psi, random_unit_vector(dim, rng));
    const double dv = vector_distance(psi, phi) - vector_distance(psi, chi);
    const double dp = hs_distance(ray_projector(psi), ray_projector(phi)) -
                      hs_distance(ray_projector(psi), ray_projector(chi));
    if (std::abs(dv) <= 1e-10 || std::abs(dp) <= 1e-10) {
      continue;
    }
    CHECK((dv < 0.0) == (dp < 0.0));
  }
}

TEST_CASE("project_onto_operator_subspace") {
  Rng rng(47);
  const Observable obs = random_observable(4, rng);
  const std::vector<ComplexMatrix> basis = operator_subspace_basis(obs);

  SUBCASE("elements of the span are fixed") {
    Eigen::MatrixXcd in_span = Eigen::MatrixXcd::Zero(4, 4);
    for (const ComplexMatrix& e : basis) {
      in_span += rng.complex_normal() * e.mat();
    }
    const ComplexMatrix a(in_span);
    CHECK(hs_distance(project_onto_operator_subspace(basis, a), a) < 1e-10);
  }
  SUBCASE("orthogonal complement maps to zero") {
    // A single off-block matrix unit is HS-orthogonal to every block unit.
    if (obs.outcomes() >= 2) {
      const Eigen::MatrixXcd off = obs.eigenbasis(0).col(0) *
                                   obs.eigenbasis(1).col(0).adjoint();
      CHECK(hs_norm(project_onto_operator_subspace(basis, ComplexMatrix(off))) <
            1e-10);
    }
  }
  SUBCASE("agrees with the superprojector on the block-diagonal basis") {
    const ComplexMatrix a(random_complex_matrix(4, rng));
    CHECK(hs_distance(project_onto_operator_subspace(basis, a),
                      superproject(obs, a)) < 1e-9);
  }
  SUBCASE("non-orthonormal bases are rejected") {
    std::vector<ComplexMatrix> bad = {ComplexMatrix::identity(4),
                                      ComplexMatrix::identity(4)};
    CHECK_THROWS_AS(
        project_onto_operator_subspace(bad, ComplexMatrix::identity(4)),
        std::invalid_argument);
  }
}

TEST_CASE("subspace Pythagoras identity") {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index dim = 2 + t % 7;
    std::vector<ComplexMatrix> basis;
    if (t % 2 == 0) {
      basis = operator_subspace_basis(random_observable(dim, rng));
    } else {
      // Gram-Schmidt over a few random matrices, with reorthogonalization.
      const int count = 1 + static_cast<int>(rng.uniform_index(4));
      std::vector<Eigen::MatrixXcd> raw;
      for (int i = 0; i < count; ++i) {
        Eigen::MatrixXcd m = random_complex_matrix(dim, rng);
        for (int pass = 0; pass < 2; ++pass) {
          for (const Eigen::MatrixXcd& p : raw) {
            m -= p.conjugate().cwiseProduct(m).sum() * p;
          }
        }
        m /= m.norm();
        raw.push_back(m);
      }
      for (Eigen::MatrixXcd& m : raw) {
        basis.emplace_back(std::move(m));
      }
    }
    const ComplexMatrix a(random_complex_matrix(dim, rng));
    Eigen::MatrixXcd in_span = Eigen::MatrixXcd::Zero(dim, dim);
    for (const ComplexMatrix& e : basis) {
      in_span += rng.complex_normal() * e.mat();
    }
    const ComplexMatrix b(in_span);
    const ComplexMatrix pa = project_onto_operator_subspace(basis, a);
    const double lhs = hs_distance(a, b);
    const double leg1 = hs_distance(a, pa);
    const double leg2 = hs_distance(pa, b);
    CHECK(std::abs(lhs * lhs - leg1 * leg1 - leg2 * leg2) < 1e-9);
  }
}
