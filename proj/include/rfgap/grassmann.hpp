#pragma once

// Sectional-curvature extrema over the Grassmannian of 2-planes in R^4 and
// Berger frames of Einstein tensors.
//
// Unit decomposable bivectors are parameterized by S^2 x S^2:
//   (alpha, beta) -> (sum_k alpha_k w+_k + sum_k beta_k w-_k) / sqrt(2),
// so that K(alpha, beta) = (<P alpha, alpha> + 2 <Z beta, alpha> + <N beta, beta>) / 2
// with [[P, Z], [Z^T, N]] the curvature operator in the (w+, w-) basis.

#include <array>
#include <string_view>

#include "rfgap/curvature.hpp"
#include "rfgap/errors.hpp"

namespace rfgap {

enum class ExtremaMethod { eigen_oracle, numeric_search };

[[nodiscard]] std::string_view to_string(ExtremaMethod m) noexcept;

struct ExtremaReport {
  double k_max = 0.0;
  Plane2 plane_max = Plane2(Vec4::UnitX(), Vec4::UnitY());
  double k_min = 0.0;
  Plane2 plane_min = Plane2(Vec4::UnitX(), Vec4::UnitW());
  ExtremaMethod method = ExtremaMethod::eigen_oracle;
};

/// Plane of the unit decomposable bivector (alpha . w+ + beta . w-) / sqrt(2).
[[nodiscard]] Plane2 plane_from_pair(const Vec3& alpha, const Vec3& beta);

/// Closed-form extrema from the eigenvalues of the diagonal blocks. Requires
/// the off-diagonal block to vanish (Einstein), else InvariantViolation.
[[nodiscard]] ExtremaReport extremize_sectional_eigen(const Riemann4& r,
                                                      double einstein_tol = kInvariantTol);

/// Multi-start search on S^2 x S^2 (32 quasi-uniform starts). Throws
/// NonConvergence if the best run does not reach gradient norm 1e-10.
[[nodiscard]] ExtremaReport extremize_sectional_numeric(const Riemann4& r);

/// Eigen oracle for Einstein input, numeric search otherwise.
[[nodiscard]] ExtremaReport extremize_sectional(const Riemann4& r,
                                                double einstein_tol = kInvariantTol);

/// max |R(i,j,i,k)| over i and distinct j, k different from i (24 components).
[[nodiscard]] double max_offdiag_residual(const Riemann4& r);

struct BergerOptions {
  double tolerance = 1e-6;
  /// Seeding grid per torus angle over [0, pi).
  int grid = 36;
};

struct BergerReport {
  Frame4 frame = Frame4::identity();
  double k01 = 0.0;
  double k02 = 0.0;
  double k03 = 0.0;
  double x = 0.0;  ///< R(0,1,2,3)
  double y = 0.0;  ///< R(0,3,1,2)
  double z = 0.0;  ///< R(0,2,3,1)
  double residual_offdiag = 0.0;
  /// (K01 - K02) - |x - z|  and  (K02 - K03) - |z - y|.
  std::array<double, 2> residual_ineq{};
  /// |K03 - k_min| for the extrema the frame was built from.
  double residual_kmin = 0.0;
  /// The tensor expressed in the frame.
  Riemann4 in_frame;
};

class BergerToleranceExceeded : public Error {
 public:
  BergerToleranceExceeded(const std::string& what, BergerReport report)
      : Error(what), report_(std::move(report)) {}
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::berger_tolerance; }
  [[nodiscard]] const BergerReport& report() const noexcept { return report_; }

 private:
  BergerReport report_;
};

/// Frame with e0, e1 spanning E.plane_max, rotated inside the plane and its
/// complement to kill every R(i,j,i,k) (j != k) and to put the minimum plane
/// at span(e0, e3). Throws BergerToleranceExceeded (carrying the report) when
/// the residual stays above options.tolerance.
[[nodiscard]] BergerReport berger_frame(const Riemann4& r, const ExtremaReport& e,
                                        const BergerOptions& options = {});

struct CorollarySlacks {
  double lower = 0.0;  ///< k_max + k_min / 2
  double upper = 0.0;  ///< -2 k_min - k_max
  [[nodiscard]] bool pass(double tol = 1e-8) const noexcept {
    return lower >= -tol && upper >= -tol;
  }
};

[[nodiscard]] CorollarySlacks corollary_bounds_check(const ExtremaReport& e);

}  // namespace rfgap
