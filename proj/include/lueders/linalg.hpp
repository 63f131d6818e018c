// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lueders/tolerances.hpp"

namespace lueders {

using Complex = std::complex<double>;

class Rng;

/// Dense square complex matrix. Construction rejects non-square shapes and
/// non-finite entries; everything else (operators, states, HS-space
/// elements) is carried by this type.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(Eigen::Index dim);
  static ComplexMatrix zero(Eigen::Index dim);

  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXcd& mat() const { return mat_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const {
    return mat_(row, col);
  }

 private:
  Eigen::MatrixXcd mat_;
};

/// Complex vector with Euclidean norm 1 (within tol::kUnitNorm).
class UnitVector {
 public:
  explicit UnitVector(Eigen::VectorXcd v);

  /// Scales v to unit norm; rejects the zero vector.
  static UnitVector normalized(const Eigen::VectorXcd& v);

  Eigen::Index dim() const { return vec_.size(); }
  const Eigen::VectorXcd& vec() const { return vec_; }

 private:
  Eigen::VectorXcd vec_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

// <a|b> = a† b
Complex overlap(const UnitVector& a, const UnitVector& b);

// |v><v|
ComplexMatrix ray_projector(const UnitVector& v);

double max_abs(const Eigen::MatrixXcd& m);

// Max-entry norm of m - m†.
double hermiticity_defect(const Eigen::MatrixXcd& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXcd eigenvectors;    // column i pairs with eigenvalues[i]

  std::vector<UnitVector> unit_vectors() const;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Rejects inputs with hermiticity defect above `tol`; throws on solver
/// failure.
EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& h,
                                            double tol = tol::kHermiticity);

// Random draws used by tests, the verification suites and the oracle.
Eigen::MatrixXcd random_complex_matrix(Eigen::Index dim, Rng& rng);
ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng);
Eigen::MatrixXcd random_unitary(Eigen::Index dim, Rng& rng);
UnitVector random_unit_vector(Eigen::Index dim, Rng& rng);

}  // namespace lueders
