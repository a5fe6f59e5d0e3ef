#include "psplit/geninv.hpp"

#include "psplit/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <optional>

namespace psplit {

ComplexMatrix moore_penrose(const ComplexMatrix& t, const Tolerances& tol) {
  const Svd d = svd(t);
  const Index r = d.rank(tol);
  const RealVector inv = d.singular.head(r).cwiseInverse();
  return d.right.leftCols(r) * inv.asDiagonal() * d.left.leftCols(r).adjoint();
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_sqrt input");
  if (!is_psd(a, tol)) throw Error(ErrorCode::NotPSD, "hermitian_sqrt requires a PSD matrix");
  if (a.rows() == 0) return a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigenvalue solve did not converge");
  }
  RealVector lambda = solver.eigenvalues();
  const double top = std::max(0.0, lambda.maxCoeff());
  const double cutoff = tol.rank_cutoff(a.rows(), a.cols()) * top;
  for (Index i = 0; i < lambda.size(); ++i) lambda(i) = lambda(i) > cutoff ? std::sqrt(lambda(i)) : 0.0;
  const ComplexMatrix& q = solver.eigenvectors();
  return q * lambda.asDiagonal() * q.adjoint();
}

PolarParts polar(const ComplexMatrix& t, const Tolerances& tol) {
  const Svd d = svd(t);
  const Index r = d.rank(tol);
  const auto ur = d.left.leftCols(r);
  const auto vr = d.right.leftCols(r);
  PolarParts out;
  out.isometry = ur * vr.adjoint();
  out.modulus = vr * d.singular.head(r).asDiagonal() * vr.adjoint();
  // Numerically the products are Hermitian only up to round-off.
  out.modulus = hermitian_part(out.modulus);
  return out;
}

ComplexMatrix abs_op(const ComplexMatrix& t, const Tolerances& tol) { return polar(t, tol).modulus; }

bool is_group_invertible(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "is_group_invertible input");
  return numerical_rank(t * t, tol) == numerical_rank(t, tol);
}

namespace {

// T = B C with B = U_r Sigma_r, C = V_r^*; K = (C B)^{-1}.
struct GroupFactors {
  ComplexMatrix b;
  ComplexMatrix k;
  ComplexMatrix c;
};

std::optional<GroupFactors> group_factors(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "group inverse input");
  const Svd d = svd(t);
  const Index r = d.rank(tol);
  if (r == 0) return std::nullopt;
  if (numerical_rank(t * t, tol) < r) {
    throw Error(ErrorCode::NotGroupInvertible, "rank(T^2) < rank(T): range and nullspace intersect");
  }
  GroupFactors f;
  f.b = d.left.leftCols(r) * d.singular.head(r).asDiagonal();
  f.c = d.right.leftCols(r).adjoint();
  const ComplexMatrix cb = f.c * f.b;
  if (condition_number(cb) > tol.cond_max) {
    throw Error(ErrorCode::NotGroupInvertible, "C B factor is numerically singular");
  }
  f.k = cb.fullPivLu().inverse();
  return f;
}

}  // namespace

ComplexMatrix group_inverse(const ComplexMatrix& t, const Tolerances& tol) {
  const auto f = group_factors(t, tol);
  if (!f) return ComplexMatrix::Zero(t.rows(), t.cols());
  return f->b * f->k * f->k * f->c;
}

ComplexMatrix oblique_projector(const SubspaceBasis& range, const SubspaceBasis& null,
                                const Tolerances& tol) {
  const Index n = range.ambient_dim();
  if (null.ambient_dim() != n) {
    throw Error(ErrorCode::ShapeMismatch, "oblique_projector: subspaces live in different spaces");
  }
  if (range.dim() + null.dim() != n) {
    throw Error(ErrorCode::NotComplements, "dimensions of range and nullspace do not add up to " +
                                               std::to_string(n));
  }
  if (n == 0) return ComplexMatrix::Zero(0, 0);
  ComplexMatrix block(n, n);
  block << range.basis, null.basis;
  if (condition_number(block) > tol.cond_max) {
    throw Error(ErrorCode::NotComplements, "[M | N] is numerically singular");
  }
  ComplexMatrix head = ComplexMatrix::Zero(n, n);
  head.leftCols(range.dim()) = range.basis;
  return head * block.fullPivLu().inverse();
}

// T T^# = B (C B)^{-1} C, kept in factored form so R(Q) carries no noise from T.
ComplexMatrix canonical_oblique(const ComplexMatrix& t, const Tolerances& tol) {
  const auto f = group_factors(t, tol);
  if (!f) return ComplexMatrix::Zero(t.rows(), t.cols());
  return f->b * f->k * f->c;
}

ComplexMatrix douglas_reduced(const ComplexMatrix& t, const ComplexMatrix& w,
                              const std::optional<SubspaceBasis>& complement, const Tolerances& tol) {
  if (t.rows() != w.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "douglas_reduced: T and W have different row counts");
  }
  if (!range_included(w, t, tol)) {
    throw Error(ErrorCode::Unsolvable, "R(W) is not contained in R(T)");
  }
  ComplexMatrix x = moore_penrose(t, tol) * w;
  if (!complement) return x;
  if (complement->ambient_dim() != t.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "complement subspace has the wrong ambient dimension");
  }
  return oblique_projector(*complement, null_basis(t, tol), tol) * x;
}

bool reverse_order_law_holds(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  if (s.cols() != t.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "reverse_order_law_holds: S T is not defined");
  }
  const ComplexMatrix sa = s.adjoint();
  return range_included(sa * s * t, t, tol) && range_included(t * t.adjoint() * sa, sa, tol);
}

}  // namespace psplit
