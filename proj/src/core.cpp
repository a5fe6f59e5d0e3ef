#include "psplit/core.hpp"

#include <cmath>

namespace psplit {

void Tolerances::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if ((rank_rtol && !positive(*rank_rtol)) || !positive(eq_atol) || !positive(rho_margin) ||
      !positive(cond_max)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be finite and strictly positive");
  }
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotGroupInvertible: return "NotGroupInvertible";
    case ErrorCode::NotComplements: return "NotComplements";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NotInPLh: return "NotInPLh";
    case ErrorCode::SingularIteration: return "SingularIteration";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::Stalled: return "Stalled";
    case ErrorCode::CriterionFailed: return "CriterionFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::Diverged:
    case ErrorCode::Stalled:
      return 4;
    case ErrorCode::NumericalFailure:
      return 1;
    default:
      return 3;
  }
}

void require_finite(const ComplexMatrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::NotFinite, std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + " must be square, got " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace psplit
