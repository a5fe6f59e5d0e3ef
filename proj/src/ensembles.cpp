#include "psplit/ensembles.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace psplit::ensembles {

Rng instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

ComplexMatrix gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) a(i, j) = Complex(normal(rng), normal(rng));
  }
  return a;
}

ComplexMatrix unitary(Rng& rng, Index n) {
  const ComplexMatrix g = gaussian(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix with_singular_values(Rng& rng, Index rows, Index cols, std::span<const double> sigma) {
  const Index k = static_cast<Index>(sigma.size());
  const ComplexMatrix u = unitary(rng, rows).leftCols(k);
  const ComplexMatrix v = unitary(rng, cols).leftCols(k);
  RealVector s(k);
  for (Index i = 0; i < k; ++i) s(i) = sigma[static_cast<std::size_t>(i)];
  return u * s.asDiagonal() * v.adjoint();
}

ComplexMatrix hermitian_with_eigenvalues(Rng& rng, std::span<const double> lambda) {
  const Index n = static_cast<Index>(lambda.size());
  const ComplexMatrix q = unitary(rng, n);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = lambda[static_cast<std::size_t>(i)];
  const ComplexMatrix h = q * d.asDiagonal() * q.adjoint();
  return (h + h.adjoint()) / 2.0;
}

ComplexMatrix orthogonal_projector(Rng& rng, Index n, Index rank) {
  const ComplexMatrix q = unitary(rng, n).leftCols(rank);
  const ComplexMatrix p = q * q.adjoint();
  return (p + p.adjoint()) / 2.0;
}

std::vector<double> uniform_values(Rng& rng, std::size_t count, double lo, double hi) {
  std::vector<double> out(count);
  for (double& v : out) v = uniform(rng, lo, hi);
  return out;
}

StarPair star_pair(Rng& rng, Index rows, Index cols, double lo, double hi) {
  const Index k = std::min(rows, cols);
  const Index rank_s = uniform_index(rng, 1, std::max<Index>(1, k - 1));
  const Index rank_d = uniform_index(rng, 0, k - rank_s);
  const ComplexMatrix u = unitary(rng, rows);
  const ComplexMatrix v = unitary(rng, cols);
  const auto block = [&](Index r) {
    const std::vector<double> sigma = uniform_values(rng, static_cast<std::size_t>(r), lo, hi);
    return with_singular_values(rng, r, r, sigma);
  };
  StarPair p;
  p.s = u.leftCols(rank_s) * block(rank_s) * v.leftCols(rank_s).adjoint();
  const ComplexMatrix d =
      u.middleCols(rank_s, rank_d) * block(rank_d) * v.middleCols(rank_s, rank_d).adjoint();
  p.t = p.s + d;
  return p;
}

}  // namespace psplit::ensembles
