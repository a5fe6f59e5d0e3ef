#include "psplit/solver.hpp"

#include "psplit/geninv.hpp"
#include "psplit/numeric.hpp"

#include <chrono>
#include <cmath>

namespace psplit {

SolveResult iterate_reduced(const ComplexMatrix& t, const ComplexMatrix& w, const ProperSplitting& spl,
                            const std::optional<SubspaceBasis>& complement,
                            const std::optional<ComplexMatrix>& x0, const Tolerances& tol,
                            const IterationControl& control) {
  const auto start = std::chrono::steady_clock::now();
  if (!approx_equal(spl.t(), t, tol)) {
    throw Error(ErrorCode::InvalidArgument, "splitting does not belong to T");
  }
  if (w.rows() != t.rows()) throw Error(ErrorCode::ShapeMismatch, "W must have as many rows as T");
  if (!range_included(w, t, tol)) throw Error(ErrorCode::Unsolvable, "R(W) is not contained in R(T)");
  if (control.max_iter <= 0 || !(control.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "max_iter and tol must be positive");
  }

  const ComplexMatrix y = douglas_reduced(spl.u(), spl.v(), complement, tol);
  const ComplexMatrix z = douglas_reduced(spl.u(), w, complement, tol);

  ComplexMatrix x = x0 ? *x0 : ComplexMatrix::Zero(t.cols(), w.cols());
  if (x.rows() != t.cols() || x.cols() != w.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "X0 has the wrong shape");
  }

  IterationReport report;
  report.rho = spectral_radius(y);
  // Monitoring uses Frobenius norms; they bound the operator norm from above.
  const double w_scale = std::max(1.0, w.norm());
  const double limit = control.blowup * (1.0 + z.norm());
  report.residual_history.push_back((t * x - w).norm());

  auto finish = [&] {
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  for (int i = 0; i < control.max_iter; ++i) {
    ComplexMatrix next = y * x + z;
    const double step = (next - x).norm();
    const double next_norm = next.norm();
    x = std::move(next);
    const double residual = (t * x - w).norm();
    report.residual_history.push_back(residual);
    report.iterations = static_cast<std::size_t>(i) + 1;
    if (!std::isfinite(next_norm) || next_norm > limit) {
      report.diverged = true;
      finish();
      throw IterationError(ErrorCode::Diverged, "iterates blew up after " +
                               std::to_string(report.iterations) + " steps (rho = " +
                               std::to_string(report.rho) + ")",
                           report);
    }
    if (step <= control.tol * std::max(1.0, next_norm) && residual <= control.tol * w_scale) {
      report.converged = true;
      break;
    }
  }

  if (!report.converged) {
    finish();
    if (report.residual_history.back() > report.residual_history.front()) {
      report.diverged = true;
      throw IterationError(ErrorCode::Diverged, "residual grew over the iteration budget", report);
    }
    throw IterationError(ErrorCode::Stalled, "iteration budget exhausted before convergence", report);
  }

  report.final_error = operator_norm(x - exact_reduced(t, w, complement, tol));
  finish();
  return {std::move(x), std::move(report)};
}

ComplexMatrix exact_reduced(const ComplexMatrix& t, const ComplexMatrix& w,
                            const std::optional<SubspaceBasis>& complement, const Tolerances& tol) {
  return douglas_reduced(t, w, complement, tol);
}

FrameApproximation frame_symmetric_approx(const FrameSpec& frame, const Tolerances& tol,
                                          const IterationControl& control) {
  const ComplexMatrix& f = frame.vectors;
  require_finite(f, "frame");
  const ComplexMatrix modulus = abs_op(f, tol);
  const ComplexMatrix gap = range_projector(f.adjoint(), tol) - modulus;
  const double criterion = operator_norm(gap);
  if (criterion >= 1.0 - tol.rho_margin) {
    throw Error(ErrorCode::CriterionFailed,
                "||P_{F*} - |F||| = " + std::to_string(criterion) + " is not below 1");
  }
  const ProperSplitting spl = projection_splitting(modulus, tol);
  SolveResult solved = iterate_reduced(modulus, f.adjoint(), spl, std::nullopt, std::nullopt, tol, control);

  FrameApproximation out;
  out.frame = solved.x.adjoint();
  out.adjoint = std::move(solved.x);
  out.tightness_defect = operator_norm(out.frame * out.frame.adjoint() - range_projector(f, tol));
  out.report = std::move(solved.report);
  return out;
}

FrameBounds frame_bounds(const FrameSpec& frame, const Tolerances& tol) {
  const Svd d = svd(frame.vectors);
  const Index r = d.rank(tol);
  FrameBounds b;
  if (r == 0) return b;
  b.upper = d.singular(0) * d.singular(0);
  b.lower = d.singular(r - 1) * d.singular(r - 1);
  b.tight = std::abs(b.upper - b.lower) <= tol.eq_atol * std::max(1.0, b.upper);
  return b;
}

}  // namespace psplit
