#pragma once

#include "psplit/core.hpp"

#include <optional>
#include <string_view>

namespace psplit {

enum class SplittingKind {
  Polar,
  Q,
  Group,
  MP,
  Projection,
  PLh,
  InducedRight,
  InducedConj,
  InducedInvertible,
  Custom,
};

std::string_view to_string(SplittingKind kind);
std::optional<SplittingKind> parse_splitting_kind(std::string_view name);

/// T = U - V with R(U) = R(T) and N(U) = N(T). Instances only come out of
/// make_splitting and the named constructors, so the invariants always hold.
class ProperSplitting {
 public:
  const ComplexMatrix& t() const { return t_; }
  const ComplexMatrix& u() const { return u_; }
  const ComplexMatrix& v() const { return v_; }
  SplittingKind kind() const { return kind_; }

 private:
  ProperSplitting(ComplexMatrix t, ComplexMatrix u, ComplexMatrix v, SplittingKind kind)
      : t_(std::move(t)), u_(std::move(u)), v_(std::move(v)), kind_(kind) {}

  friend ProperSplitting make_splitting(const ComplexMatrix&, const ComplexMatrix&, const Tolerances&,
                                        SplittingKind);

  ComplexMatrix t_;
  ComplexMatrix u_;
  ComplexMatrix v_;
  SplittingKind kind_;
};

/// Validates R(U) = R(T), N(U) = N(T) and sets V = U - T. Throws NotProper.
ProperSplitting make_splitting(const ComplexMatrix& t, const ComplexMatrix& u, const Tolerances& tol = {},
                               SplittingKind kind = SplittingKind::Custom);

/// U = U_T, the partial isometry of the polar decomposition.
ProperSplitting polar_splitting(const ComplexMatrix& t, const Tolerances& tol = {});
/// U = Q_{R(T)//N(T)}.
ProperSplitting q_splitting(const ComplexMatrix& t, const Tolerances& tol = {});
/// U = T^#.
ProperSplitting group_splitting(const ComplexMatrix& t, const Tolerances& tol = {});
/// U = T^dagger, Hermitian T only.
ProperSplitting mp_splitting(const ComplexMatrix& t, const Tolerances& tol = {});
/// U = P_T, Hermitian T only.
ProperSplitting projection_splitting(const ComplexMatrix& t, const Tolerances& tol = {});

/// U = P_S P_{S^*} for a split S = P_S H with H Hermitian. Membership is
/// checked by building H = (S + S^* - P_S S^*) Q, Q = Q_{R(S)//N(S)}.
ProperSplitting plh_splitting(const ComplexMatrix& s, const Tolerances& tol = {});

/// Hermitian factor H = (S + S^* - P_S S^*) Q of a split S, when S is in P.L^h.
ComplexMatrix plh_hermitian_factor(const ComplexMatrix& s, const Tolerances& tol = {});

/// Splitting T W = U W - V W for a unitary W.
ProperSplitting induced_right(const ProperSplitting& spl, const ComplexMatrix& w, const Tolerances& tol = {});
/// Splitting X T X^* = X U X^* - X V X^* for a unitary X.
ProperSplitting induced_conj(const ProperSplitting& spl, const ComplexMatrix& x, const Tolerances& tol = {});
/// Splitting T G = P_T G - (P_T - T) G for Hermitian T and invertible G.
ProperSplitting induced_invertible(const ComplexMatrix& t, const ComplexMatrix& g, const Tolerances& tol = {});

/// U^dagger V.
ComplexMatrix iteration_matrix(const ProperSplitting& spl, const Tolerances& tol = {});

enum class FastPath {
  PolarNorm,       ///< ||T|| < 2
  QNorm,           ///< ||P_{T^*}(I - T)|| < 1, needs P_{T^*} T Hermitian
  GroupNorm,       ///< ||P_{T^*}(I - T^2)|| < 1, needs P_{T^*} T^2 Hermitian
  MPNorm,          ///< ||P_T - T^2|| < 1
  ProjectionNorm,  ///< ||P_T - T|| < 1
  PLhNorm,         ///< ||P_{S^*} - Q^* S|| < 1
};

std::string_view to_string(FastPath path);

struct ConvergenceReport {
  double rho = 0.0;
  bool converges = false;
  /// rho within rho_margin of 1; reported as non-convergent.
  bool boundary = false;
  std::optional<FastPath> fast_path;
  std::optional<double> criterion_value;
  std::optional<bool> criterion_converges;
};

ConvergenceReport convergence(const ProperSplitting& spl, const Tolerances& tol = {});

/// The six positivity conditions on a proper splitting, in order:
/// T^dagger V >= 0; U^dagger V >= 0; 0 <= U^dagger V <= P_{V^*};
/// 0 <= U^dagger T <= P_{T^*}; U X = V has a PSD solution;
/// U^dagger T Hermitian with (P - U^dagger T)^2 <= lambda (P - U^dagger T).
struct PositivityDiagnostics {
  bool tdagger_v_psd = false;
  bool udagger_v_psd = false;
  bool udagger_v_below_projector = false;
  bool udagger_t_between = false;
  bool positive_solution = false;
  bool quadratic_domination = false;

  bool all_equal() const;
};

PositivityDiagnostics positivity_diagnostics(const ProperSplitting& spl, const Tolerances& tol = {});

struct RhoFormula {
  double rho_iteration = 0.0;  ///< rho(U^dagger V)
  double rho_formula = 0.0;    ///< rho(T^dagger V) / (1 + rho(T^dagger V))
};

/// Both sides of the spectral-radius formula for PSD U^dagger V. Throws NotPSD
/// when U^dagger V is not PSD.
RhoFormula rho_formula_check(const ProperSplitting& spl, const Tolerances& tol = {});

struct SplittingIdentities {
  bool pinv_product = false;   ///< (U^dagger T)^dagger = T^dagger U
  bool nullspace = false;      ///< N(U^dagger V) = N(V)
  bool inverse_series = false; ///< T^dagger = (I - U^dagger V)^{-1} U^dagger

  bool all() const { return pinv_product && nullspace && inverse_series; }
};

/// Throws SingularIteration if I - U^dagger V is numerically singular.
SplittingIdentities splitting_identities_check(const ProperSplitting& spl, const Tolerances& tol = {});

enum class Faster { First, Second, Tie };

struct Comparison {
  double rho_first = 0.0;
  double rho_second = 0.0;
  Faster faster = Faster::Tie;
};

std::string_view to_string(Faster f);

/// Ties are decided within eq_atol.
Comparison compare(const ProperSplitting& first, const ProperSplitting& second, const Tolerances& tol = {});

}  // namespace psplit
