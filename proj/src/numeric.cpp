#include "psplit/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace psplit {

Index Svd::rank(const Tolerances& tol) const {
  if (singular.size() == 0 || singular(0) == 0.0) return 0;
  const double cutoff = tol.rank_cutoff(left.rows(), right.rows()) * singular(0);
  Index r = 0;
  while (r < singular.size() && singular(r) > cutoff) ++r;
  return r;
}

Svd svd(const ComplexMatrix& a) {
  require_finite(a, "svd input");
  Svd out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.left = ComplexMatrix::Identity(a.rows(), a.rows());
    out.right = ComplexMatrix::Identity(a.cols(), a.cols());
    out.singular = RealVector::Zero(0);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success || !solver.singularValues().allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "singular value decomposition did not converge");
  }
  out.left = solver.matrixU();
  out.singular = solver.singularValues();
  out.right = solver.matrixV();
  return out;
}

Index numerical_rank(const ComplexMatrix& a, const Tolerances& tol) { return svd(a).rank(tol); }

ComplexMatrix range_projector(const ComplexMatrix& a, const Tolerances& tol) {
  const SubspaceBasis b = range_basis(a, tol);
  return b.basis * b.basis.adjoint();
}

SubspaceBasis range_basis(const ComplexMatrix& a, const Tolerances& tol) {
  const Svd d = svd(a);
  const Index r = d.rank(tol);
  return {d.left.leftCols(r), tol.rank_cutoff(a.rows(), a.cols())};
}

SubspaceBasis null_basis(const ComplexMatrix& a, const Tolerances& tol) {
  const Svd d = svd(a);
  const Index r = d.rank(tol);
  return {d.right.rightCols(a.cols() - r), tol.rank_cutoff(a.rows(), a.cols())};
}

SubspaceBasis SubspaceBasis::span_of(const ComplexMatrix& columns, const Tolerances& tol) {
  return range_basis(columns, tol);
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const RealVector s = svd(a).singular;
  return s.size() ? s(0) : 0.0;
}

double reduced_minimum_modulus(const ComplexMatrix& a, const Tolerances& tol) {
  const Svd d = svd(a);
  const Index r = d.rank(tol);
  return r == 0 ? 0.0 : d.singular(r - 1);
}

double spectral_radius(const ComplexMatrix& a) {
  require_square(a, "spectral_radius input");
  require_finite(a, "spectral_radius input");
  if (a.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigenvalue QR iteration did not converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double condition_number(const ComplexMatrix& a) {
  require_square(a, "condition_number input");
  if (a.rows() == 0) return 1.0;
  const RealVector s = svd(a).singular;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) / 2.0; }

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigenvalues input");
  require_finite(a, "hermitian_eigenvalues input");
  if (a.rows() == 0) return RealVector::Zero(0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigenvalue solve did not converge");
  }
  return solver.eigenvalues();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
  return operator_norm(a - b) <= tol.eq_atol * scale;
}

bool is_hermitian(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) return false;
  return operator_norm(a - a.adjoint()) <= tol.eq_atol;
}

bool is_psd(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_psd input");
  if (!is_hermitian(a, tol)) return false;
  if (a.rows() == 0) return true;
  return hermitian_eigenvalues(a)(0) >= -tol.eq_atol;
}

bool is_unitary(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
  return operator_norm(a.adjoint() * a - id) <= tol.eq_atol;
}

bool range_included(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "range_included: operands live in different spaces");
  }
  const SubspaceBasis rb = range_basis(b, tol);
  const ComplexMatrix residual = a - rb.basis * (rb.basis.adjoint() * a);
  return operator_norm(residual) <= tol.eq_atol * std::max(1.0, operator_norm(a));
}

bool subspaces_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "subspaces_equal: operands live in different spaces");
  }
  return operator_norm(range_projector(a, tol) - range_projector(b, tol)) <= tol.eq_atol;
}

}  // namespace psplit
