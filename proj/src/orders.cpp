#include "psplit/orders.hpp"

#include "psplit/geninv.hpp"
#include "psplit/numeric.hpp"

namespace psplit {

namespace {

void require_hermitian(const ComplexMatrix& a, const Tolerances& tol, std::string_view what) {
  if (!is_hermitian(a, tol)) throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
}

void require_psd(const ComplexMatrix& a, const Tolerances& tol, std::string_view what) {
  require_square(a, what);
  if (!is_psd(a, tol)) throw Error(ErrorCode::NotPSD, std::string(what) + " is not PSD");
}

// Idempotent onto R(S) along R(T - S) + R(T)^perp, valid under rank subtractivity.
ComplexMatrix minus_witness(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  const Index n = t.rows();
  const SubspaceBasis rs = range_basis(s, tol);
  const SubspaceBasis rd = range_basis(t - s, tol);
  const SubspaceBasis rt_perp = null_basis(t.adjoint(), tol);
  ComplexMatrix along(n, rd.dim() + rt_perp.dim());
  along << rd.basis, rt_perp.basis;
  return oblique_projector(rs, SubspaceBasis::span_of(along, tol), tol);
}

}  // namespace

OrderVerdict star_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "star_leq");
  const ComplexMatrix p_left = range_projector(s, tol);
  const ComplexMatrix p_right = range_projector(s.adjoint(), tol);
  OrderVerdict v;
  v.holds = approx_equal(s, p_left * t, tol) && approx_equal(s.adjoint(), p_right * t.adjoint(), tol);
  if (v.holds) {
    v.witness_left = p_left;
    v.witness_right = p_right;
  }
  return v;
}

bool star_leq_by_decomposition(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "star_leq_by_decomposition");
  const ComplexMatrix d = t - s;
  const Index rt = numerical_rank(t, tol);
  const Index rs = numerical_rank(s, tol);
  const Index rd = numerical_rank(d, tol);
  if (rt != rs + rd) return false;
  const double scale = std::max(1.0, operator_norm(t));
  // Orthogonality of both range pairs: S^* D = 0 and S D^* = 0.
  return operator_norm(s.adjoint() * d) <= tol.eq_atol * scale * scale &&
         operator_norm(s * d.adjoint()) <= tol.eq_atol * scale * scale;
}

OrderVerdict minus_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "minus_leq");
  OrderVerdict v;
  // rank is invariant under adjoint, so the condition for T^* is the same count.
  v.holds = numerical_rank(t, tol) == numerical_rank(s, tol) + numerical_rank(t - s, tol);
  if (v.holds) {
    v.witness_left = minus_witness(s, t, tol);
    v.witness_right = minus_witness(s.adjoint(), t.adjoint(), tol);
  }
  return v;
}

OrderVerdict sharp_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "sharp_leq");
  require_square(s, "sharp_leq operand");
  OrderVerdict v;
  if (approx_equal(s, t, tol)) {
    v.holds = true;
    return v;
  }
  const ComplexMatrix q = canonical_oblique(s, tol);
  v.holds = approx_equal(q * t, s, tol) && approx_equal(t * q, s, tol);
  if (v.holds) v.witness_left = q;
  return v;
}

bool loewner_leq(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "loewner_leq");
  require_hermitian(s, tol, "S");
  require_hermitian(t, tol, "T");
  return is_psd(t - s, tol);
}

BltVerdict blt_criterion(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "blt_criterion");
  require_psd(s, tol, "S");
  require_psd(t, tol, "T");
  const ComplexMatrix root = hermitian_sqrt(s, tol);
  BltVerdict v;
  v.rho = spectral_radius(root * moore_penrose(t, tol) * root);
  v.range_included = range_included(root, t, tol);
  v.holds = v.range_included && v.rho <= 1.0 + tol.rho_margin;
  return v;
}

bool trivial_intersection(const SubspaceBasis& a, const SubspaceBasis& b, const Tolerances& tol) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "trivial_intersection: different ambient spaces");
  }
  if (a.dim() == 0 || b.dim() == 0) return true;
  ComplexMatrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis, b.basis;
  return numerical_rank(joined, tol) == a.dim() + b.dim();
}

AntitoneVerdict mp_antitone_check(const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
  require_same_shape(s, t, "mp_antitone_check");
  require_psd(s, tol, "S");
  require_psd(t, tol, "T");
  AntitoneVerdict v;
  v.loewner = loewner_leq(s, t, tol);
  v.inverses_reversed = loewner_leq(moore_penrose(t, tol), moore_penrose(s, tol), tol);
  v.trivial_intersections = trivial_intersection(range_basis(s, tol), null_basis(t, tol), tol) &&
                            trivial_intersection(range_basis(t, tol), null_basis(s, tol), tol);
  return v;
}

}  // namespace psplit
