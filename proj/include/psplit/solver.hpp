#pragma once

#include "psplit/core.hpp"
#include "psplit/splittings.hpp"

#include <optional>
#include <vector>

namespace psplit {

struct IterationControl {
  /// Relative tolerance for both the step and residual stopping tests.
  double tol = 1e-12;
  int max_iter = 10000;
  /// Iterate norm above blowup * (1 + ||Z_M||) is declared divergence.
  double blowup = 1e12;
};

struct IterationReport {
  std::size_t iterations = 0;
  /// ||T X^i - W|| for i = 0..iterations.
  std::vector<double> residual_history;
  /// ||X - X_exact|| against the closed-form reduced solution.
  std::optional<double> final_error;
  double rho = 0.0;  ///< rho(Y_M)
  bool converged = false;
  bool diverged = false;
  double wall_time_seconds = 0.0;
};

struct SolveResult {
  ComplexMatrix x;
  IterationReport report;
};

/// Raised for Diverged and Stalled runs; carries the partial report.
class IterationError : public Error {
 public:
  IterationError(ErrorCode code, const std::string& message, IterationReport report)
      : Error(code, message), report_(std::move(report)) {}

  const IterationReport& report() const noexcept { return report_; }

 private:
  IterationReport report_;
};

/// Stationary iteration X^{i+1} = Y_M X^i + Z_M, where Y_M and Z_M are the
/// reduced solutions for M of U Y = V and U Z = W. Without M the complement
/// is N(T)^perp; without X0 the start is zero.
SolveResult iterate_reduced(const ComplexMatrix& t, const ComplexMatrix& w, const ProperSplitting& spl,
                            const std::optional<SubspaceBasis>& complement = std::nullopt,
                            const std::optional<ComplexMatrix>& x0 = std::nullopt, const Tolerances& tol = {},
                            const IterationControl& control = {});

/// Closed-form reduced solution Q_{M//N(T)} T^dagger W.
ComplexMatrix exact_reduced(const ComplexMatrix& t, const ComplexMatrix& w,
                            const std::optional<SubspaceBasis>& complement = std::nullopt,
                            const Tolerances& tol = {});

/// Frame given by the columns of its synthesis operator F (d x n).
struct FrameSpec {
  ComplexMatrix vectors;

  Index ambient_dim() const { return vectors.rows(); }
  Index count() const { return vectors.cols(); }
};

struct FrameApproximation {
  ComplexMatrix adjoint;  ///< limit X = U_F^*
  ComplexMatrix frame;    ///< U_F, columns are the approximating vectors
  double tightness_defect = 0.0;  ///< ||U_F U_F^* - P_F||
  IterationReport report;
};

/// Symmetric approximation through the projection splitting of |F|:
/// X^{i+1} = (P_{F^*} - |F|) X^i + F^*. Throws CriterionFailed when
/// ||P_{F^*} - |F||| >= 1 - rho_margin.
FrameApproximation frame_symmetric_approx(const FrameSpec& frame, const Tolerances& tol = {},
                                          const IterationControl& control = {});

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool tight = false;
};

/// (sigma_min^+(F)^2, sigma_max(F)^2) on the spanned subspace.
FrameBounds frame_bounds(const FrameSpec& frame, const Tolerances& tol = {});

}  // namespace psplit
