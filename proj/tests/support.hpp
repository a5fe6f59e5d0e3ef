#pragma once

#include "psplit/core.hpp"
#include "psplit/ensembles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <complex>
#include <vector>

namespace psplit::testing {

using ensembles::Rng;
using ensembles::instance_rng;

inline ComplexMatrix mat(Index rows, Index cols, std::initializer_list<Complex> entries) {
  ComplexMatrix a(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = *it++;
  }
  return a;
}

inline ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) {
    a(i, i) = v;
    ++i;
  }
  return a;
}

inline ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

// Oracles below use Eigen decompositions directly (BDCSVD / complete
// orthogonal decomposition) instead of the library routines under test.

inline double opnorm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues()(0);
}

inline double near(const ComplexMatrix& a, const ComplexMatrix& b) { return opnorm(a - b); }

inline ComplexMatrix pinv_oracle(const ComplexMatrix& a) {
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  cod.setThreshold(1e-12);
  return cod.pseudoInverse();
}

inline double rho_oracle(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::ComplexEigenSolver<ComplexMatrix>(a, false).eigenvalues().cwiseAbs().maxCoeff();
}

/// U_r V_r^* from an independent SVD, with rank cut at 1e-10 * sigma_1.
inline ComplexMatrix polar_isometry_oracle(const ComplexMatrix& a) {
  Eigen::BDCSVD<ComplexMatrix> d(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = d.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > 1e-10 * std::max(1.0, s(0))) ++r;
  return d.matrixU().leftCols(r) * d.matrixV().leftCols(r).adjoint();
}

inline std::vector<double> values(Rng& rng, Index count, double lo, double hi) {
  return ensembles::uniform_values(rng, static_cast<std::size_t>(count), lo, hi);
}

/// Random m x n matrix of rank r with singular values in [lo, hi].
inline ComplexMatrix random_rank(Rng& rng, Index m, Index n, Index r, double lo = 0.2, double hi = 2.0) {
  return ensembles::with_singular_values(rng, m, n, values(rng, r, lo, hi));
}

/// Matrix with the prescribed eigenvalues and an eigenvector basis of
/// condition number at most about 10 (non-normal unless `normal`).
inline ComplexMatrix with_spectrum(Rng& rng, const std::vector<Complex>& lambda, bool normal = false) {
  const Index n = static_cast<Index>(lambda.size());
  Eigen::VectorXcd d(n);
  for (Index i = 0; i < n; ++i) d(i) = lambda[static_cast<std::size_t>(i)];
  const ComplexMatrix q = ensembles::unitary(rng, n);
  if (normal) return q * d.asDiagonal() * q.adjoint();
  const std::vector<double> sv = values(rng, n, 0.4, 2.5);
  const ComplexMatrix s = ensembles::with_singular_values(rng, n, n, sv);
  return s * d.asDiagonal() * s.inverse();
}

/// A proper splitting T = U - V of an m x n rank-r matrix whose iteration
/// matrix U^dagger V is similar to G: with T = U_r S V_r^* and
/// U = U_r S (I - G)^{-1} V_r^*, U^dagger V = V_r G V_r^*.
struct Generated {
  ComplexMatrix t;
  ComplexMatrix u;
  ComplexMatrix g;
  ComplexMatrix left;   ///< U_r
  ComplexMatrix right;  ///< V_r
  ComplexMatrix null;   ///< orthonormal basis of N(T)
};

inline Generated splitting_with_iteration(Rng& rng, Index m, Index n, const ComplexMatrix& g) {
  const Index r = g.rows();
  const ComplexMatrix uu = ensembles::unitary(rng, m);
  const ComplexMatrix vv = ensembles::unitary(rng, n);
  const std::vector<double> sv = values(rng, r, 0.3, 2.0);
  const ComplexMatrix core = ensembles::with_singular_values(rng, r, r, sv);
  Generated out;
  out.left = uu.leftCols(r);
  out.right = vv.leftCols(r);
  out.null = vv.rightCols(n - r);
  out.g = g;
  out.t = out.left * core * out.right.adjoint();
  const ComplexMatrix k = core * (ComplexMatrix::Identity(r, r) - g).inverse();
  out.u = out.left * k * out.right.adjoint();
  return out;
}

/// Random complex eigenvalues with modulus in [lo, hi] and |1 - lambda| >= 0.1.
inline std::vector<Complex> eigenvalues_in_annulus(Rng& rng, Index r, double lo, double hi) {
  std::vector<Complex> out;
  while (static_cast<Index>(out.size()) < r) {
    const double mod = ensembles::uniform(rng, lo, hi);
    const double arg = ensembles::uniform(rng, -3.14159265358979, 3.14159265358979);
    const Complex z = std::polar(mod, arg);
    if (std::abs(1.0 - z) >= 0.1) out.push_back(z);
  }
  return out;
}

/// Basis of a random complement of span(null) in C^n: columns right + null C.
inline ComplexMatrix random_complement(Rng& rng, const ComplexMatrix& right, const ComplexMatrix& null) {
  if (null.cols() == 0) return right;
  return right + null * ensembles::gaussian(rng, null.cols(), right.cols());
}

}  // namespace psplit::testing
