#pragma once

#include "psplit/core.hpp"

#include <optional>

namespace psplit {

/// T = isometry * modulus with N(isometry) = N(T) and modulus = |T| = (T^*T)^{1/2}.
struct PolarParts {
  ComplexMatrix isometry;
  ComplexMatrix modulus;
};

/// Moore-Penrose inverse by inverting the singular values above the rank
/// cutoff.
ComplexMatrix moore_penrose(const ComplexMatrix& t, const Tolerances& tol = {});

/// Positive square root of a PSD matrix. Eigenvalues below the rank cutoff
/// are treated as zero so that R(sqrt(A)) = R(A) numerically.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerances& tol = {});

/// |T| = (T^*T)^{1/2}.
ComplexMatrix abs_op(const ComplexMatrix& t, const Tolerances& tol = {});

PolarParts polar(const ComplexMatrix& t, const Tolerances& tol = {});

/// rank(T^2) == rank(T).
bool is_group_invertible(const ComplexMatrix& t, const Tolerances& tol = {});

/// Group inverse through the full-rank factorization T = B C taken from the
/// SVD: T^# = B (C B)^{-2} C. Throws NotGroupInvertible when rank(T^2) <
/// rank(T) or when C B is too ill-conditioned to invert.
ComplexMatrix group_inverse(const ComplexMatrix& t, const Tolerances& tol = {});

/// Oblique projection onto span(range) along span(null), computed as
/// [M | 0] [M | N]^{-1}.
ComplexMatrix oblique_projector(const SubspaceBasis& range, const SubspaceBasis& null,
                                const Tolerances& tol = {});

/// T T^# = Q_{R(T)//N(T)} for a split (group invertible) T.
ComplexMatrix canonical_oblique(const ComplexMatrix& t, const Tolerances& tol = {});

/// Reduced solution of T X = W with R(X) inside `complement`, which must be a
/// complement of N(T). Without a complement this is the Douglas reduced
/// solution T^dagger W.
ComplexMatrix douglas_reduced(const ComplexMatrix& t, const ComplexMatrix& w,
                              const std::optional<SubspaceBasis>& complement = std::nullopt,
                              const Tolerances& tol = {});

/// Greville-type criterion for (S T)^dagger = T^dagger S^dagger:
/// R(S^*S T) in R(T) and R(T T^* S^*) in R(S^*).
bool reverse_order_law_holds(const ComplexMatrix& s, const ComplexMatrix& t,
                             const Tolerances& tol = {});

}  // namespace psplit
