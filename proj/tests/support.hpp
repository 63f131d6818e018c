// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared fixtures for the unit test binaries.

#include <cmath>

#include "lueders/hs_geometry.hpp"
#include "lueders/quantum.hpp"
#include "lueders/rng.hpp"

namespace lueders::testing {

inline ComplexMatrix pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return ComplexMatrix(m);
}

inline ComplexMatrix pauli_y() {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return ComplexMatrix(m);
}

inline ComplexMatrix pauli_z() {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return ComplexMatrix(m);
}

// Outcomes ordered ascending: index 0 is eigenvalue -1 with projector
// |1><1|, index 1 is eigenvalue +1 with projector |0><0|.
inline Observable sigma_z_observable() {
  return spectral_decompose(pauli_z());
}

inline UnitVector basis_vector(Eigen::Index dim, Eigen::Index i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(i) = 1.0;
  return UnitVector(std::move(v));
}

inline UnitVector plus_vector() {
  Eigen::VectorXcd v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return UnitVector(std::move(v));
}

inline double max_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace lueders::testing
