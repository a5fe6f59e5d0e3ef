#pragma once

#include "psplit/core.hpp"

namespace psplit {

/// Thin SVD container: A = left * diag(singular) * right^*, singular values
/// sorted descending. `left` is rows x rows and `right` is cols x cols.
struct Svd {
  ComplexMatrix left;
  RealVector singular;
  ComplexMatrix right;

  /// Number of singular values above the rank cutoff.
  Index rank(const Tolerances& tol) const;
};

Svd svd(const ComplexMatrix& a);

Index numerical_rank(const ComplexMatrix& a, const Tolerances& tol = {});

/// Orthogonal projector onto R(A).
ComplexMatrix range_projector(const ComplexMatrix& a, const Tolerances& tol = {});

SubspaceBasis range_basis(const ComplexMatrix& a, const Tolerances& tol = {});
SubspaceBasis null_basis(const ComplexMatrix& a, const Tolerances& tol = {});

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Smallest singular value above the rank cutoff (reduced minimum modulus);
/// zero for the zero matrix.
double reduced_minimum_modulus(const ComplexMatrix& a, const Tolerances& tol = {});

/// Max |eigenvalue| from a full complex Schur eigenvalue solve.
double spectral_radius(const ComplexMatrix& a);

/// Largest-to-smallest singular value ratio of a square matrix; infinity if
/// singular.
double condition_number(const ComplexMatrix& a);

/// Eigenvalues (ascending) of the Hermitian part (A + A^*) / 2.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// ||A - B|| <= eq_atol * max(1, ||A||, ||B||).
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

bool is_hermitian(const ComplexMatrix& a, const Tolerances& tol = {});
bool is_psd(const ComplexMatrix& a, const Tolerances& tol = {});
bool is_unitary(const ComplexMatrix& a, const Tolerances& tol = {});

/// R(A) subset of R(B): ||(I - P_B) A|| <= eq_atol * max(1, ||A||).
bool range_included(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

/// R(A) == R(B): ||P_A - P_B|| <= eq_atol.
bool subspaces_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

/// (A + A^*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

}  // namespace psplit
