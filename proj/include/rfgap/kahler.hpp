#pragma once

// Kahler curvature on C^2: components R(a, b-bar, c, d-bar), holomorphic
// sectional curvature over CP^1, and the Siu-Yang second-variation formula.
//
// Indices are 0-based in the API (file formats use 1-based indices).

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "rfgap/errors.hpp"

namespace rfgap {

using cplx = std::complex<double>;
using KArray = std::array<cplx, 16>;
using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;

constexpr std::size_t idx_k(int a, int b, int c, int d) noexcept {
  return static_cast<std::size_t>(((a * 2 + b) * 2 + c) * 2 + d);
}

/// Complex curvature components with
///   R[a,b,c,d] = R[c,b,a,d] = R[a,d,c,b]  and  conj(R[a,b,c,d]) = R[b,a,d,c].
class KahlerCurv2 {
 public:
  KahlerCurv2() = default;

  /// Throws InvariantViolation if a symmetry fails by more than tol * max(1, |R|).
  static KahlerCurv2 validated(const KArray& components, double tol = 1e-10);

  cplx operator()(int a, int b, int c, int d) const noexcept { return c_[idx_k(a, b, c, d)]; }
  [[nodiscard]] const KArray& components() const noexcept { return c_; }
  [[nodiscard]] double max_abs() const noexcept;
  [[nodiscard]] KahlerCurv2 scaled(double t) const noexcept;

  friend bool operator==(const KahlerCurv2&, const KahlerCurv2&) = default;

 private:
  explicit KahlerCurv2(const KArray& c) : c_(c) {}
  friend KahlerCurv2 kahler_symmetrize(const KArray& raw);

  KArray c_{};
};

/// Largest violation of the three symmetry relations.
[[nodiscard]] double kahler_symmetry_residual(const KArray& c);

/// Average over the order-8 symmetry group; an orthogonal projection.
[[nodiscard]] KahlerCurv2 kahler_symmetrize(const KArray& raw);

/// Ric(a, b-bar) = sum_c R[a,b,c,c].
[[nodiscard]] Mat2c kahler_ricci(const KahlerCurv2& r);

/// lambda = tr(Ric) / 2 and the deviation max |Ric - lambda I|.
struct KahlerEinstein {
  double lambda = 0.0;
  double residual = 0.0;
};

[[nodiscard]] KahlerEinstein kahler_einstein(const KahlerCurv2& r);

/// H(v) = sum v_a conj(v_b) v_c conj(v_d) R[a,b,c,d] for unit v.
[[nodiscard]] double hol_sectional(const KahlerCurv2& r, const Vec2c& v);

/// v = (cos t, e^{i phi} sin t).
[[nodiscard]] Vec2c chart_point(double t, double phi);

/// Unit direction whose line has Bloch vector n.
[[nodiscard]] Vec2c direction_from_bloch(const Eigen::Vector3d& n);
[[nodiscard]] Eigen::Vector3d bloch_from_direction(const Vec2c& v);

/// H as c0 + g.n + n^T S n on the unit sphere, via v v^* = (I + n.sigma) / 2.
struct BlochForm {
  Eigen::Matrix3d quad = Eigen::Matrix3d::Zero();
  Eigen::Vector3d lin = Eigen::Vector3d::Zero();
  double constant = 0.0;
  [[nodiscard]] double value(const Eigen::Vector3d& n) const {
    return constant + lin.dot(n) + n.dot(quad * n);
  }
};

[[nodiscard]] BlochForm bloch_form(const KahlerCurv2& r);

struct HolExtremaReport {
  double h_max = 0.0;
  double h_min = 0.0;
  /// CP^1 average of H by quadrature.
  double h_av = 0.0;
  /// Einstein constant; meaningful when `einstein` is true.
  double lambda = 0.0;
  bool einstein = false;
  Vec2c dir_max = Vec2c(1.0, 0.0);
  Vec2c dir_min = Vec2c(1.0, 0.0);
};

/// Multi-start search on CP^1 (16 starts). Throws NonConvergence if the best
/// run of either search stops above gradient norm 1e-10.
[[nodiscard]] HolExtremaReport extremize_hol(const KahlerCurv2& r, double einstein_tol = 1e-10);

struct HolGridExtrema {
  double h_min = 0.0;
  double h_max = 0.0;
};

/// Brute force over an n x n grid of the (t, phi) chart, poles included.
[[nodiscard]] HolGridExtrema hol_extrema_grid(const KahlerCurv2& r, int n = 2001);

/// Mean of H over CP^1: Gauss-Legendre in cos 2t times the trapezoid rule in phi.
[[nodiscard]] double hol_average_quadrature(const KahlerCurv2& r);

/// Unitary matrix with first column v.
[[nodiscard]] Mat2c unitary_frame(const Vec2c& v);

/// R'[a,b,c,d] = R(U e_a, U e_b, U e_c, U e_d). Rejects non-unitary U (1e-10).
[[nodiscard]] KahlerCurv2 conjugate_kahler(const KahlerCurv2& r, const Mat2c& u);

/// Haar-distributed element of the unitary group, deterministic in seed.
[[nodiscard]] Mat2c random_unitary(std::uint64_t seed);

/// Max modulus of the components with precisely three equal indices, in a
/// unitary frame with e1 = v.
[[nodiscard]] double critical_frame_check(const KahlerCurv2& r, const Vec2c& v);

enum class Orientation { min_frame, max_frame };
enum class KahlerSign { negative, positive, inconclusive };

[[nodiscard]] std::string_view to_string(Orientation o) noexcept;
[[nodiscard]] std::string_view to_string(KahlerSign s) noexcept;

struct SiuYangCertificate {
  Orientation orientation = Orientation::min_frame;
  double h_min = 0.0;
  double h_max = 0.0;
  double r1111 = 0.0;
  double r1122 = 0.0;
  double a_value = 0.0;
  double b_modulus = 0.0;
  /// -A R1122 + |B|^2 from the frame components.
  double laplacian_value = 0.0;
  /// -3 H_min^2 + (2 H_max + H_min)^2, or the swapped form at a maximum frame.
  double laplacian_closed_form = 0.0;
  double frame_residual = 0.0;
  /// min frame: negative iff the value is < 0; max frame: positive iff > 0.
  KahlerSign sign_conclusion = KahlerSign::inconclusive;
  HolExtremaReport extrema;
};

/// Evaluates the formula in the unitary frame with e1 = v, where v is claimed
/// critical for H and `extrema` supplies H_min, H_max for the closed form.
/// Throws FrameNotCritical if the frame residual exceeds 1e-7 * max(1, |R|).
[[nodiscard]] SiuYangCertificate siu_yang_at(const KahlerCurv2& r, const Vec2c& v, Orientation orientation,
                                             const HolExtremaReport& extrema);

/// Evaluates the formula at the minimizing (or maximizing) direction of H.
/// Throws InvariantViolation unless Ricci-flat, FrameNotCritical if the
/// frame residual exceeds 1e-7 * max(1, |R|).
[[nodiscard]] SiuYangCertificate siu_yang_laplacian(const KahlerCurv2& r,
                                                    Orientation orientation = Orientation::min_frame,
                                                    double tol = 1e-10);

struct KahlerPinchingSlacks {
  /// (ke) with the quadrature average: (H_av - H_min) - (H_max - H_min)/3 and
  /// 2(H_max - H_min)/3 - (H_av - H_min).
  std::array<double, 2> ke_quadrature{};
  /// The same with H_av = 2 lambda / 3.
  std::array<double, 2> ke_identity{};
  /// (ke2): H_max + H_min/2 and -2 H_min - H_max. Zero unless Ricci-flat.
  std::array<double, 2> ke2{};
  bool ricci_flat = false;
  [[nodiscard]] double worst() const noexcept;
};

/// Requires an Einstein report.
[[nodiscard]] KahlerPinchingSlacks kahler_pinching_bounds(const HolExtremaReport& report,
                                                          double flat_tol = 1e-10);

struct KahlerThresholds {
  double c_min_case = 0.0;  ///< (1 + sqrt 3) / 2
  double c_max_case = 0.0;  ///< sqrt 3 - 1
};

[[nodiscard]] KahlerThresholds kahler_thresholds() noexcept;

/// R1111 = R2222 = -1, R1122 class = 1, R1212 = R2121 = b, three-equal-index
/// components 0.
[[nodiscard]] KahlerCurv2 family_f(double b);

/// Ricci-flat sample: all free components uniform in [-scale, scale].
[[nodiscard]] KahlerCurv2 sample_ricci_flat_kahler(std::uint64_t seed, double scale = 1.0);

/// Einstein sample with the given lambda.
[[nodiscard]] KahlerCurv2 sample_einstein_kahler(std::uint64_t seed, double lambda,
                                                 double scale = 1.0);

}  // namespace rfgap
