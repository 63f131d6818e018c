// SPDX-License-Identifier: Apache-2.0
#pragma once

// Numerical tolerances, absolute at unit scale. States and projectors are
// O(1) objects, so inputs are never rescaled before comparison.

namespace lueders::tol {

// Max-entry deviation allowed between a matrix and its adjoint.
inline constexpr double kHermiticity = 1e-10;

// |tr(rho) - 1| allowed on density-operator construction.
inline constexpr double kTraceOne = 1e-10;

// Eigenvalues of a density operator in (-kEigClip, 0) are clipped to zero;
// anything below -kEigClip is rejected.
inline constexpr double kEigClip = 1e-10;

// Euclidean norm deviation allowed for a unit vector.
inline constexpr double kUnitNorm = 1e-12;

// Default single-linkage gap below which eigenvalues merge into one
// spectral point.
inline constexpr double kClusterDefault = 1e-8;

// Projector validation (idempotency / orthogonality, max-entry).
inline constexpr double kProjector = 1e-10;

// Outcomes with probability below this have no conditional state.
inline constexpr double kProbabilityFloor = 1e-12;

// Probabilities in (-kProbabilityClip, 0) are round-off and clip to zero.
inline constexpr double kProbabilityClip = 1e-10;

// A search candidate may not beat the block-diagonal projection by more
// than this.
inline constexpr double kMinimalityGap = 1e-7;

// Required closeness (HS norm) of the descent minimizer to the projection.
inline constexpr double kMinimalityState = 1e-5;

// Orthonormality defect allowed on an operator-subspace basis.
inline constexpr double kBasisOrthonormality = 1e-9;

}  // namespace lueders::tol
