#include "psplit/splittings.hpp"

#include "psplit/geninv.hpp"
#include "psplit/numeric.hpp"

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <utility>

namespace psplit {

namespace {

constexpr std::array<std::pair<SplittingKind, std::string_view>, 10> kKindNames{{
    {SplittingKind::Polar, "polar"},
    {SplittingKind::Q, "Q"},
    {SplittingKind::Group, "group"},
    {SplittingKind::MP, "MP"},
    {SplittingKind::Projection, "projection"},
    {SplittingKind::PLh, "PLh"},
    {SplittingKind::InducedRight, "induced_right"},
    {SplittingKind::InducedConj, "induced_conj"},
    {SplittingKind::InducedInvertible, "induced_invertible"},
    {SplittingKind::Custom, "custom"},
}};

// V = U - T and U^dagger V carry cancellation noise at the scale of U, so
// their ranks are cut relative to that scale instead of their own norm.
ComplexMatrix range_projector_at(const ComplexMatrix& a, double scale, const Tolerances& tol) {
  const Svd d = svd(a);
  const double cutoff = tol.rank_cutoff(a.rows(), a.cols()) * std::max(scale, d.singular.size() ? d.singular(0) : 0.0);
  Index r = 0;
  while (r < d.singular.size() && d.singular(r) > cutoff) ++r;
  return d.left.leftCols(r) * d.left.leftCols(r).adjoint();
}

void require_hermitian(const ComplexMatrix& t, const Tolerances& tol) {
  if (!is_hermitian(t, tol)) throw Error(ErrorCode::NotHermitian, "splitting requires a Hermitian operator");
}

ComplexMatrix identity_like(const ComplexMatrix& t) { return ComplexMatrix::Identity(t.cols(), t.cols()); }

}  // namespace

std::string_view to_string(SplittingKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "custom";
}

std::optional<SplittingKind> parse_splitting_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  // Accept lowercase spellings of the short tags.
  if (name == "q") return SplittingKind::Q;
  if (name == "mp") return SplittingKind::MP;
  if (name == "plh") return SplittingKind::PLh;
  return std::nullopt;
}

std::string_view to_string(FastPath path) {
  switch (path) {
    case FastPath::PolarNorm: return "norm_T_lt_2";
    case FastPath::QNorm: return "norm_PTstar_I_minus_T_lt_1";
    case FastPath::GroupNorm: return "norm_PTstar_I_minus_T2_lt_1";
    case FastPath::MPNorm: return "norm_PT_minus_T2_lt_1";
    case FastPath::ProjectionNorm: return "norm_PT_minus_T_lt_1";
    case FastPath::PLhNorm: return "norm_PSstar_minus_QstarS_lt_1";
  }
  return "unknown";
}

std::string_view to_string(Faster f) {
  switch (f) {
    case Faster::First: return "first";
    case Faster::Second: return "second";
    case Faster::Tie: return "tie";
  }
  return "tie";
}

ProperSplitting make_splitting(const ComplexMatrix& t, const ComplexMatrix& u, const Tolerances& tol,
                               SplittingKind kind) {
  require_same_shape(t, u, "make_splitting");
  require_finite(t, "T");
  require_finite(u, "U");
  if (!subspaces_equal(u, t, tol)) throw Error(ErrorCode::NotProper, "R(U) differs from R(T)");
  if (!subspaces_equal(u.adjoint(), t.adjoint(), tol)) {
    throw Error(ErrorCode::NotProper, "N(U) differs from N(T)");
  }
  return ProperSplitting(t, u, u - t, kind);
}

ProperSplitting polar_splitting(const ComplexMatrix& t, const Tolerances& tol) {
  return make_splitting(t, polar(t, tol).isometry, tol, SplittingKind::Polar);
}

ProperSplitting q_splitting(const ComplexMatrix& t, const Tolerances& tol) {
  return make_splitting(t, canonical_oblique(t, tol), tol, SplittingKind::Q);
}

ProperSplitting group_splitting(const ComplexMatrix& t, const Tolerances& tol) {
  return make_splitting(t, group_inverse(t, tol), tol, SplittingKind::Group);
}

ProperSplitting mp_splitting(const ComplexMatrix& t, const Tolerances& tol) {
  require_hermitian(t, tol);
  return make_splitting(t, moore_penrose(t, tol), tol, SplittingKind::MP);
}

ProperSplitting projection_splitting(const ComplexMatrix& t, const Tolerances& tol) {
  require_hermitian(t, tol);
  return make_splitting(t, range_projector(t, tol), tol, SplittingKind::Projection);
}

ComplexMatrix plh_hermitian_factor(const ComplexMatrix& s, const Tolerances& tol) {
  require_square(s, "plh_hermitian_factor input");
  const ComplexMatrix q = canonical_oblique(s, tol);
  const ComplexMatrix ps = range_projector(s, tol);
  const ComplexMatrix h = (s + s.adjoint() - ps * s.adjoint()) * q;
  if (!is_hermitian(h, tol)) {
    throw Error(ErrorCode::NotInPLh, "(S + S* - P_S S*) Q is not Hermitian");
  }
  const ComplexMatrix hh = hermitian_part(h);
  if (!approx_equal(ps * hh, s, tol)) {
    throw Error(ErrorCode::NotInPLh, "S is not P_S times the recovered Hermitian factor");
  }
  return hh;
}

ProperSplitting plh_splitting(const ComplexMatrix& s, const Tolerances& tol) {
  plh_hermitian_factor(s, tol);
  const ComplexMatrix u = range_projector(s, tol) * range_projector(s.adjoint(), tol);
  return make_splitting(s, u, tol, SplittingKind::PLh);
}

ProperSplitting induced_right(const ProperSplitting& spl, const ComplexMatrix& w, const Tolerances& tol) {
  if (!is_unitary(w, tol)) throw Error(ErrorCode::NotUnitary, "right factor is not unitary");
  if (w.rows() != spl.t().cols()) throw Error(ErrorCode::ShapeMismatch, "right factor has wrong size");
  return make_splitting(spl.t() * w, spl.u() * w, tol, SplittingKind::InducedRight);
}

ProperSplitting induced_conj(const ProperSplitting& spl, const ComplexMatrix& x, const Tolerances& tol) {
  require_square(spl.t(), "induced_conj operand");
  if (!is_unitary(x, tol)) throw Error(ErrorCode::NotUnitary, "conjugating factor is not unitary");
  if (x.rows() != spl.t().rows()) throw Error(ErrorCode::ShapeMismatch, "conjugating factor has wrong size");
  return make_splitting(x * spl.t() * x.adjoint(), x * spl.u() * x.adjoint(), tol, SplittingKind::InducedConj);
}

ProperSplitting induced_invertible(const ComplexMatrix& t, const ComplexMatrix& g, const Tolerances& tol) {
  require_hermitian(t, tol);
  require_square(g, "invertible factor");
  if (g.rows() != t.cols()) throw Error(ErrorCode::ShapeMismatch, "invertible factor has wrong size");
  if (condition_number(g) > tol.cond_max) throw Error(ErrorCode::NotInvertible, "G is numerically singular");
  return make_splitting(t * g, range_projector(t, tol) * g, tol, SplittingKind::InducedInvertible);
}

ComplexMatrix iteration_matrix(const ProperSplitting& spl, const Tolerances& tol) {
  return moore_penrose(spl.u(), tol) * spl.v();
}

ConvergenceReport convergence(const ProperSplitting& spl, const Tolerances& tol) {
  ConvergenceReport r;
  r.rho = spectral_radius(iteration_matrix(spl, tol));
  r.converges = r.rho < 1.0 - tol.rho_margin;
  r.boundary = std::abs(r.rho - 1.0) <= tol.rho_margin;

  const ComplexMatrix& t = spl.t();
  double threshold = 1.0;
  switch (spl.kind()) {
    case SplittingKind::Polar:
      r.fast_path = FastPath::PolarNorm;
      r.criterion_value = operator_norm(t);
      threshold = 2.0;
      break;
    case SplittingKind::Q: {
      const ComplexMatrix p = range_projector(t.adjoint(), tol);
      if (is_hermitian(p * t, tol)) {
        r.fast_path = FastPath::QNorm;
        r.criterion_value = operator_norm(p * (identity_like(t) - t));
      }
      break;
    }
    case SplittingKind::Group: {
      const ComplexMatrix p = range_projector(t.adjoint(), tol);
      const ComplexMatrix t2 = t * t;
      if (is_hermitian(p * t2, tol)) {
        r.fast_path = FastPath::GroupNorm;
        r.criterion_value = operator_norm(p * (identity_like(t) - t2));
      }
      break;
    }
    case SplittingKind::MP:
      r.fast_path = FastPath::MPNorm;
      r.criterion_value = operator_norm(range_projector(t, tol) - t * t);
      break;
    case SplittingKind::Projection:
      r.fast_path = FastPath::ProjectionNorm;
      r.criterion_value = operator_norm(range_projector(t, tol) - t);
      break;
    case SplittingKind::PLh: {
      const ComplexMatrix q = canonical_oblique(t, tol);
      r.fast_path = FastPath::PLhNorm;
      r.criterion_value = operator_norm(range_projector(t.adjoint(), tol) - q.adjoint() * t);
      break;
    }
    default:
      break;
  }
  if (r.criterion_value) r.criterion_converges = *r.criterion_value < threshold - tol.rho_margin;
  return r;
}

bool PositivityDiagnostics::all_equal() const {
  const std::array<bool, 6> all{tdagger_v_psd,     udagger_v_psd,     udagger_v_below_projector,
                                udagger_t_between, positive_solution, quadratic_domination};
  for (bool b : all) {
    if (b != all[0]) return false;
  }
  return true;
}

PositivityDiagnostics positivity_diagnostics(const ProperSplitting& spl, const Tolerances& tol) {
  const ComplexMatrix ud = moore_penrose(spl.u(), tol);
  const ComplexMatrix td = moore_penrose(spl.t(), tol);
  const ComplexMatrix a = ud * spl.v();
  const ComplexMatrix b = ud * spl.t();
  const ComplexMatrix p_t = range_projector(spl.t().adjoint(), tol);
  const ComplexMatrix p_v = range_projector(spl.v().adjoint(), tol);

  PositivityDiagnostics d;
  d.tdagger_v_psd = is_psd(td * spl.v(), tol);
  d.udagger_v_psd = is_psd(a, tol);
  d.udagger_v_below_projector = d.udagger_v_psd && is_psd(p_v - a, tol);
  d.udagger_t_between = is_psd(b, tol) && is_psd(p_t - b, tol);
  // By Douglas' theorem U^dagger V is the reduced solution of U X = V, so a
  // PSD solution exists exactly when the system is solvable and it is PSD.
  d.positive_solution = range_included(spl.v(), spl.u(), tol) && d.udagger_v_psd;
  if (is_hermitian(b, tol)) {
    const ComplexMatrix gap = hermitian_part(p_t - b);
    const double lambda = operator_norm(gap) + 1.0;
    d.quadratic_domination = is_psd(lambda * gap - gap * gap, tol);
  }
  return d;
}

RhoFormula rho_formula_check(const ProperSplitting& spl, const Tolerances& tol) {
  const ComplexMatrix a = iteration_matrix(spl, tol);
  if (!is_psd(a, tol)) throw Error(ErrorCode::NotPSD, "U^dagger V is not PSD");
  RhoFormula out;
  out.rho_iteration = spectral_radius(a);
  const double r = spectral_radius(moore_penrose(spl.t(), tol) * spl.v());
  out.rho_formula = r / (1.0 + r);
  return out;
}

SplittingIdentities splitting_identities_check(const ProperSplitting& spl, const Tolerances& tol) {
  const ComplexMatrix ud = moore_penrose(spl.u(), tol);
  const ComplexMatrix td = moore_penrose(spl.t(), tol);
  const ComplexMatrix a = ud * spl.v();
  const ComplexMatrix defect = identity_like(spl.t()) - a;
  if (condition_number(defect) > tol.cond_max) {
    throw Error(ErrorCode::SingularIteration, "I - U^dagger V is numerically singular");
  }
  SplittingIdentities out;
  out.pinv_product = approx_equal(moore_penrose(ud * spl.t(), tol), td * spl.u(), tol);
  const double scale = std::max(operator_norm(spl.u()), operator_norm(spl.t()));
  out.nullspace = operator_norm(range_projector_at(a.adjoint(), operator_norm(ud) * scale, tol) -
                                range_projector_at(spl.v().adjoint(), scale, tol)) <= tol.eq_atol;
  out.inverse_series = approx_equal(td, defect.fullPivLu().solve(ud), tol);
  return out;
}

Comparison compare(const ProperSplitting& first, const ProperSplitting& second, const Tolerances& tol) {
  Comparison c;
  c.rho_first = spectral_radius(iteration_matrix(first, tol));
  c.rho_second = spectral_radius(iteration_matrix(second, tol));
  if (c.rho_first < c.rho_second - tol.eq_atol) {
    c.faster = Faster::First;
  } else if (c.rho_second < c.rho_first - tol.eq_atol) {
    c.faster = Faster::Second;
  } else {
    c.faster = Faster::Tie;
  }
  return c;
}

}  // namespace psplit
