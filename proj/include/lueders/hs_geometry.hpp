// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "lueders/quantum.hpp"

namespace lueders {

// Hilbert-Schmidt scalar product (a, b) = tr(a† b); conjugate-symmetric,
// linear in the second argument.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double hs_norm(const ComplexMatrix& a);

// sqrt((a-b, a-b)); the distance used for all state comparisons.
double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// The map B -> sum_n P_n B P_n for the projectors of an observable.
/// An orthogonal projector on HS space: idempotent, Hermitian with respect
/// to hs_inner, and a contraction. Its fixed points are exactly the
/// operators that are block-diagonal across the eigenspaces.
struct SuperProjector {
  Observable observable;
};

ComplexMatrix superproject(const SuperProjector& sp, const ComplexMatrix& b);

/// Convenience overload.
ComplexMatrix superproject(const Observable& obs, const ComplexMatrix& b);

/// Returns e^{i theta} * phi with <phi'|psi> real and >= 0. A zero overlap
/// leaves phi unchanged. This is the phase convention that makes the
/// Euclidean distance between unit rays well defined.
UnitVector phase_align(const UnitVector& psi, const UnitVector& phi);

/// sqrt(2 - 2|<phi|psi>|): the vector distance under the phase convention
/// above. Monotone in the overlap, like the HS distance between the
/// corresponding ray projectors sqrt(2 - 2|<phi|psi>|^2).
double vector_distance(const UnitVector& psi, const UnitVector& phi);

/// Orthogonal projection of `a` onto span(basis), basis orthonormal in the
/// HS inner product (defect checked against tol::kBasisOrthonormality).
ComplexMatrix project_onto_operator_subspace(
    const std::vector<ComplexMatrix>& basis, const ComplexMatrix& a);

/// Orthonormal operator basis of the super-projector's range: the matrix
/// units of each eigenspace, expressed through Observable::eigenbasis.
/// Size sum_n rank(P_n)^2.
std::vector<ComplexMatrix> operator_subspace_basis(const Observable& obs);

}  // namespace lueders
