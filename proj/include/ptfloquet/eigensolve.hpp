#pragma once

#include <utility>
#include <vector>

#include "ptfloquet/types.hpp"

namespace ptfloquet {

/// All eigenvalues of a square complex matrix, with algebraic multiplicity.
/// Householder reduction to Hessenberg form, then single-shift QR with
/// Wilkinson shifts and deflation. Throws EigensolverFailure when an
/// eigenvalue fails to converge within the iteration cap.
std::vector<Complex> eigenvalues(const ComplexMatrix& M);

/// Determinant by partial-pivoted LU; a singular input returns 0.
Complex determinant(const ComplexMatrix& M);

/// Reduces M in place to upper Hessenberg form by unitary similarity.
void reduce_to_hessenberg(ComplexMatrix& M);

/// Orders a multiset by (modulus, phase in (-pi, pi]).
void sort_by_modulus_phase(std::vector<Complex>& values);

/// Pairs the two multisets: both sorted by (modulus, phase), then each
/// element of `a` in turn claims its nearest unclaimed element of `b`.
/// Returns index pairs into the original (unsorted) inputs.
std::vector<std::pair<std::size_t, std::size_t>> match_multisets(const std::vector<Complex>& a,
                                                                 const std::vector<Complex>& b);

/// Largest pair residual |a - b| / max(1, |b|) under match_multisets.
/// Sets of different size give +infinity.
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

} // namespace ptfloquet
