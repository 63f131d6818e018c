// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lueders/linalg.hpp"

namespace lueders {

/// Hermitian, positive semidefinite, unit-trace matrix. Obtained through
/// make_density (or the random generators), never constructed raw.
class DensityOperator {
 public:
  Eigen::Index dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const Eigen::MatrixXcd& mat() const { return matrix_.mat(); }

  friend DensityOperator make_density(const ComplexMatrix& m);

 private:
  explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

/// Validates m as a density operator. Eigenvalues in (-kEigClip, 0) are
/// clipped to zero and the state renormalized; anything below -kEigClip,
/// a hermiticity defect above kHermiticity or |tr - 1| > kTraceOne is an
/// error.
DensityOperator make_density(const ComplexMatrix& m);

/// GG†/tr(GG†) with G a dim x rank matrix of standard complex Gaussian
/// entries; deterministic given seed.
DensityOperator random_density(Eigen::Index dim, Eigen::Index rank,
                               std::uint64_t seed);
DensityOperator random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng);

/// |psi><psi|
DensityOperator pure_state(const UnitVector& psi);

/// Observable in spectral form: distinct real eigenvalues paired with
/// mutually orthogonal projectors that sum to the identity. Outcomes are
/// ordered by ascending eigenvalue. Copies are cheap (shared immutable
/// payload).
class Observable {
 public:
  /// Validating factory. `distinct_tol` is the minimum allowed gap between
  /// eigenvalues; projector checks use tol::kProjector.
  static Observable create(std::vector<double> eigenvalues,
                           std::vector<ComplexMatrix> projectors,
                           double distinct_tol = tol::kClusterDefault);

  Eigen::Index dim() const;
  int outcomes() const;
  double eigenvalue(int n) const;
  const ComplexMatrix& projector(int n) const;
  /// Rank of the n-th eigenprojector.
  Eigen::Index rank(int n) const;
  /// d x rank(n) isometry whose columns span range(P_n); the coordinate
  /// frame for per-outcome blocks.
  const Eigen::MatrixXcd& eigenbasis(int n) const;
  bool trivial() const { return outcomes() == 1; }

 private:
  struct Data;
  explicit Observable(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// Spectral form of a Hermitian matrix. Eigenvalues whose single-linkage
/// gap is <= cluster_tol merge into one spectral point whose projector is
/// the sum over the cluster's eigenvectors.
Observable spectral_decompose(const ComplexMatrix& h,
                              double cluster_tol = tol::kClusterDefault);

/// A mixture sum_n v_n * rho_n'' of states each sharp in the observable.
/// Blocks are stored in the coordinates of their eigenspace (rank(P_n) x
/// rank(P_n), via Observable::eigenbasis) and embedded on demand.
struct ADefiniteFamilyElement {
  Observable observable;
  std::vector<double> weights;          // v_n >= 0, sum 1
  std::vector<DensityOperator> blocks;  // blocks[n] has dim rank(P_n)
};

/// Validating factory. Blocks may be given either in eigenspace
/// coordinates (rank x rank) or embedded (d x d, in which case support
/// inside range(P_n) is checked before conversion).
ADefiniteFamilyElement make_family_element(Observable obs,
                                           std::vector<double> weights,
                                           std::vector<DensityOperator> blocks);

/// sum_n v_n * V_n block_n V_n†; always a valid density operator fixed by
/// the map sum_n P_n (.) P_n.
DensityOperator assemble_family_element(const ADefiniteFamilyElement& e);

/// The n-th block embedded as a d x d density operator supported on
/// range(P_n).
DensityOperator embedded_block(const ADefiniteFamilyElement& e, int n);

/// Weights from a flat Dirichlet, blocks from per-eigenspace Wishart
/// draws; rank-1 eigenspaces take the unique block [1]. Deterministic
/// given seed. The Rng overload documents the draw order: weights first,
/// then blocks in outcome order.
ADefiniteFamilyElement random_family_element(const Observable& obs,
                                             std::uint64_t seed);
ADefiniteFamilyElement random_family_element(const Observable& obs, Rng& rng);

/// Random observable with a random eigenspace-dimension pattern (uniform
/// composition of dim) and Haar-rotated projectors; eigenvalue gaps are
/// at least 0.5. Test-input generator.
Observable random_observable(Eigen::Index dim, Rng& rng);
Observable random_observable(Eigen::Index dim, std::uint64_t seed);

}  // namespace lueders
