#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psplit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kUlp = std::numeric_limits<double>::epsilon();

/// Numerical thresholds shared by every decision the library makes.
///
/// The exact theory works with closed ranges, exact equalities and strict
/// inequalities; at finite precision each of those becomes a comparison
/// against one of these values.
struct Tolerances {
  /// Relative singular-value cutoff for rank decisions. Unset means
  /// max(rows, cols) * ulp, evaluated per matrix.
  std::optional<double> rank_rtol;
  /// Absolute threshold for matrix equality and semidefiniteness.
  double eq_atol = 1e-9;
  /// Strictness band for rho < 1 decisions.
  double rho_margin = 1e-10;
  /// Largest condition number accepted before a block is treated as singular
  /// ([M | N] complements, CB in the group inverse, invertible factors).
  double cond_max = 1e-3 / kUlp;

  double rank_cutoff(Index rows, Index cols) const {
    if (rank_rtol) return *rank_rtol;
    return static_cast<double>(std::max<Index>({rows, cols, 1})) * kUlp;
  }

  void validate() const;
};

enum class ErrorCode {
  NumericalFailure,
  NonSquare,
  ShapeMismatch,
  NotFinite,
  NotHermitian,
  NotPSD,
  NotUnitary,
  NotInvertible,
  NotGroupInvertible,
  NotComplements,
  Unsolvable,
  NotProper,
  NotInPLh,
  SingularIteration,
  Diverged,
  Stalled,
  CriterionFailed,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Process exit status for an error: 2 parse, 3 precondition, 4 divergence,
/// 1 for internal numerical failure.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Orthonormal basis of a subspace of C^ambient_dim (columns of `basis`).
///
/// A zero-dimensional subspace is an ambient_dim x 0 matrix.
struct SubspaceBasis {
  ComplexMatrix basis;
  double rank_tol = 0.0;

  Index ambient_dim() const { return basis.rows(); }
  Index dim() const { return basis.cols(); }

  /// Orthonormal basis for the span of `columns`.
  static SubspaceBasis span_of(const ComplexMatrix& columns, const Tolerances& tol = {});
};

void require_finite(const ComplexMatrix& a, std::string_view what);
void require_square(const ComplexMatrix& a, std::string_view what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view what);

}  // namespace psplit
