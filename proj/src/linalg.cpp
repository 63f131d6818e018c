// SPDX-License-Identifier: Apache-2.0
#include "lueders/linalg.hpp"

#include <stdexcept>
#include <string>

#include "lueders/rng.hpp"

namespace lueders {

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : mat_(std::move(m)) {
  if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
    throw std::invalid_argument(
        "ComplexMatrix: expected a square matrix with dim >= 1, got " +
        std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
  }
  if (!mat_.allFinite()) {
    throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::zero(Eigen::Index dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

UnitVector::UnitVector(Eigen::VectorXcd v) : vec_(std::move(v)) {
  if (vec_.size() < 1) {
    throw std::invalid_argument("UnitVector: empty vector");
  }
  if (!vec_.allFinite()) {
    throw std::invalid_argument("UnitVector: non-finite entry");
  }
  const double norm = vec_.norm();
  if (std::abs(norm - 1.0) > tol::kUnitNorm) {
    throw std::invalid_argument("UnitVector: norm deviates from 1 by " +
                                std::to_string(std::abs(norm - 1.0)));
  }
}

UnitVector UnitVector::normalized(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("UnitVector: cannot normalize zero vector");
  }
  return UnitVector(v / norm);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("matmul: dimension mismatch " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
  return ComplexMatrix(a.mat() * b.mat());
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  return ComplexMatrix(a.mat().adjoint());
}

Complex trace(const ComplexMatrix& a) { return a.mat().trace(); }

Complex overlap(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  return a.vec().dot(b.vec());  // Eigen's dot conjugates the left argument
}

ComplexMatrix ray_projector(const UnitVector& v) {
  return ComplexMatrix(v.vec() * v.vec().adjoint());
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return max_abs(m - m.adjoint());
}

std::vector<UnitVector> EigenDecomposition::unit_vectors() const {
  std::vector<UnitVector> out;
  out.reserve(static_cast<std::size_t>(eigenvectors.cols()));
  for (Eigen::Index i = 0; i < eigenvectors.cols(); ++i) {
    out.emplace_back(Eigen::VectorXcd(eigenvectors.col(i)));
  }
  return out;
}

EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& h,
                                            double tol) {
  const double defect = hermiticity_defect(h.mat());
  if (defect > tol) {
    throw std::invalid_argument(
        "hermitian_eigendecompose: input is not Hermitian (defect " +
        std::to_string(defect) + ")");
  }
  // Hermitize to keep the solver on the symmetric path regardless of
  // round-off in the input.
  const Eigen::MatrixXcd sym = (h.mat() + h.mat().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigendecompose: solver failed");
  }
  EigenDecomposition out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + h.dim());
  out.eigenvectors = solver.eigenvectors();
  return out;
}

Eigen::MatrixXcd random_complex_matrix(Eigen::Index dim, Rng& rng) {
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = rng.complex_normal();
    }
  }
  return m;
}

ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  const Eigen::MatrixXcd z = random_complex_matrix(dim, rng);
  return ComplexMatrix((z + z.adjoint()) / 2.0);
}

Eigen::MatrixXcd random_unitary(Eigen::Index dim, Rng& rng) {
  const Eigen::MatrixXcd z = random_complex_matrix(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the factorization has a positive diagonal;
  // this makes the distribution Haar and the output deterministic.
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

UnitVector random_unit_vector(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = rng.complex_normal();
  }
  return UnitVector::normalized(v);
}

}  // namespace lueders
