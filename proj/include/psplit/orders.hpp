#pragma once

#include "psplit/core.hpp"

#include <optional>

namespace psplit {

/// Outcome of a partial-order test. When `holds`, the witnesses satisfy the
/// defining factorizations: S = witness_left * T and S^* = witness_right * T^*
/// (for the sharp order, S = Q T = T Q with Q = witness_left).
struct OrderVerdict {
  bool holds = false;
  std::optional<ComplexMatrix> witness_left;
  std::optional<ComplexMatrix> witness_right;
};

/// S <=* T: S = P_S T and S^* = P_{S^*} T^*.
OrderVerdict star_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol = {});

/// Star order decided through the orthogonal range decompositions
/// R(T) = R(S) (+) R(T - S) and R(T^*) = R(S^*) (+) R(T^* - S^*).
bool star_leq_by_decomposition(const ComplexMatrix& s, const ComplexMatrix& t,
                               const Tolerances& tol = {});

/// S <=- T by rank subtractivity rank(T) = rank(S) + rank(T - S). Witnesses
/// are the idempotents onto R(S) (resp. R(S^*)) along R(T - S) + R(T)^perp.
OrderVerdict minus_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol = {});

/// S <=# T: S = T, or S = Q T = T Q with Q = S S^#.
OrderVerdict sharp_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol = {});

/// Loewner order S <= T for Hermitian S, T.
bool loewner_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol = {});

struct BltVerdict {
  bool holds = false;
  double rho = 0.0;  ///< rho(S^{1/2} T^dagger S^{1/2})
  bool range_included = false;
};

/// Spectral characterization of S <= T for PSD S, T.
BltVerdict blt_criterion(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol = {});

struct AntitoneVerdict {
  bool loewner = false;                ///< S <= T
  bool inverses_reversed = false;      ///< T^dagger <= S^dagger
  bool trivial_intersections = false;  ///< R(S) ^ N(T) = R(T) ^ N(S) = {0}
};

/// The three conditions of the Moore-Penrose antitonicity theorem; any two
/// of them imply the third.
AntitoneVerdict mp_antitone_check(const ComplexMatrix& s, const ComplexMatrix& t,
                                  const Tolerances& tol = {});

/// dim(A ^ B) == 0 for two subspaces, decided by rank additivity of [A | B].
bool trivial_intersection(const SubspaceBasis& a, const SubspaceBasis& b, const Tolerances& tol = {});

}  // namespace psplit
