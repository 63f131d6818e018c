// SPDX-License-Identifier: Apache-2.0
#include "lueders/hs_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lueders {

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  // tr(a† b) = sum_ij conj(a_ij) b_ij
  return a.mat().conjugate().cwiseProduct(b.mat()).sum();
}

double hs_norm(const ComplexMatrix& a) { return a.mat().norm(); }

double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hs_distance: dimension mismatch");
  }
  return (a.mat() - b.mat()).norm();
}

ComplexMatrix superproject(const SuperProjector& sp, const ComplexMatrix& b) {
  return superproject(sp.observable, b);
}

ComplexMatrix superproject(const Observable& obs, const ComplexMatrix& b) {
  if (obs.dim() != b.dim()) {
    throw std::invalid_argument("superproject: dimension mismatch");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
  for (int n = 0; n < obs.outcomes(); ++n) {
    const Eigen::MatrixXcd& p = obs.projector(n).mat();
    out += p * b.mat() * p;
  }
  return ComplexMatrix(std::move(out));
}

UnitVector phase_align(const UnitVector& psi, const UnitVector& phi) {
  const Complex o = overlap(phi, psi);  // <phi|psi>
  const double mag = std::abs(o);
  if (mag == 0.0) {
    return phi;
  }
  // <c*phi|psi> = conj(c) <phi|psi>; c = o/|o| makes that real and >= 0.
  const Complex c = o / mag;
  return UnitVector(Eigen::VectorXcd(c * phi.vec()));
}

double vector_distance(const UnitVector& psi, const UnitVector& phi) {
  const double o = std::abs(overlap(phi, psi));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * o));
}

ComplexMatrix project_onto_operator_subspace(
    const std::vector<ComplexMatrix>& basis, const ComplexMatrix& a) {
  if (basis.empty()) {
    throw std::invalid_argument("project_onto_operator_subspace: empty basis");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != a.dim()) {
      throw std::invalid_argument(
          "project_onto_operator_subspace: dimension mismatch");
    }
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Complex g = hs_inner(basis[i], basis[j]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > tol::kBasisOrthonormality) {
        throw std::invalid_argument(
            "project_onto_operator_subspace: basis elements " +
            std::to_string(i) + ", " + std::to_string(j) +
            " are not orthonormal");
      }
    }
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.dim(), a.dim());
  for (const ComplexMatrix& e : basis) {
    out += hs_inner(e, a) * e.mat();
  }
  return ComplexMatrix(std::move(out));
}

std::vector<ComplexMatrix> operator_subspace_basis(const Observable& obs) {
  std::vector<ComplexMatrix> basis;
  for (int n = 0; n < obs.outcomes(); ++n) {
    const Eigen::MatrixXcd& v = obs.eigenbasis(n);
    for (Eigen::Index i = 0; i < v.cols(); ++i) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        basis.emplace_back(Eigen::MatrixXcd(v.col(i) * v.col(j).adjoint()));
      }
    }
  }
  return basis;
}

}  // namespace lueders
