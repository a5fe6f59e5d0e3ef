#pragma once

#include "psplit/core.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace psplit::ensembles {

using Rng = std::mt19937_64;

/// Generator for instance `index` of a seeded ensemble. Streams are
/// independent of evaluation order.
Rng instance_rng(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
Index uniform_index(Rng& rng, Index lo, Index hi);  ///< inclusive range

/// Entries with independent standard complex normal real and imaginary parts.
ComplexMatrix gaussian(Rng& rng, Index rows, Index cols);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
ComplexMatrix unitary(Rng& rng, Index n);

/// U diag(sigma) V^* with Haar U, V; rank equals the number of nonzero sigma.
ComplexMatrix with_singular_values(Rng& rng, Index rows, Index cols, std::span<const double> sigma);

/// Q diag(lambda) Q^* with Haar Q.
ComplexMatrix hermitian_with_eigenvalues(Rng& rng, std::span<const double> lambda);

/// Orthogonal projector onto a random `rank`-dimensional subspace of C^n.
ComplexMatrix orthogonal_projector(Rng& rng, Index n, Index rank);

/// `count` values uniform in [lo, hi].
std::vector<double> uniform_values(Rng& rng, std::size_t count, double lo, double hi);

struct StarPair {
  ComplexMatrix s;
  ComplexMatrix t;
};

/// S and T - S with mutually orthogonal ranges and co-ranges, so S <=* T.
/// Nonzero singular values of both blocks are drawn from [lo, hi].
StarPair star_pair(Rng& rng, Index rows, Index cols, double lo, double hi);

}  // namespace psplit::ensembles
