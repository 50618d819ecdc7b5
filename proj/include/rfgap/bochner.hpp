#pragma once

// Sign analysis of Q(R)(e0,e3,e0,e3) at a minimizing Berger frame.
//
// With K_max = 1 and K_min = -delta, the mixed components x = R(0,1,2,3) and
// z = R(0,2,3,1) lie in the parallelogram
//   D(delta) = { |x - z| <= 2 - delta,  |x + 2z| <= 2 delta - 1 },
// and Q_0303 / 2 = delta^2 + 2 delta - 2 + q(x, z) with q = x^2 + z^2 + 4xz.
// The maximum-point variant uses q'(y, z) = y^2 + z^2 + 4yz on
//   { |y + 2z| <= 2 - delta,  |z - y| <= 2 delta - 1 }.

#include <array>
#include <string_view>
#include <vector>

#include "rfgap/curvature.hpp"
#include "rfgap/grassmann.hpp"

namespace rfgap {

[[nodiscard]] double q_value(double x, double z) noexcept;

/// K03^2 + 2 (lambda - K03) K01 - 2 K01^2 + q(x, z).
[[nodiscard]] double half_q0303_frame(double k01, double k03, double lambda, double x,
                                      double z) noexcept;

/// K01^2 - 2 K01 K03 - 2 K03^2 + q(y, z), the Ricci-flat maximum-point analogue.
[[nodiscard]] double half_q0101_frame(double k01, double k03, double y, double z) noexcept;

struct Point2 {
  double a = 0.0;  ///< x for the minimum-point region, y for the remark region
  double b = 0.0;  ///< z in both regions
  friend bool operator==(const Point2&, const Point2&) = default;
};

enum class CandidateKind {
  vertex,
  edge_critical_diagonal,  ///< stationary point of q on an edge with direction (1, 1)
  edge_critical_axis,      ///< stationary point of q on an edge with direction (2, -1)
  segment_stationary,      ///< stationary point on a degenerate (segment) region
  interior_stationary,     ///< the origin; a saddle, never an extremum
};

[[nodiscard]] std::string_view to_string(CandidateKind k) noexcept;

struct Candidate {
  Point2 point;
  CandidateKind kind = CandidateKind::vertex;
  bool inside = false;
  double q = 0.0;
};

enum class RegionKind { min_point, remark_max_point };

struct PolygonExtrema {
  double q_min = 0.0;
  Point2 argmin;
  double q_max = 0.0;
  Point2 argmax;
};

/// The region, its vertices and every candidate extremum of q on it.
class PolygonProblem {
 public:
  /// Throws DegenerateRegion unless 1/2 <= delta <= 2.
  explicit PolygonProblem(double delta, RegionKind kind = RegionKind::min_point);

  [[nodiscard]] double delta() const noexcept { return delta_; }
  [[nodiscard]] RegionKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::array<Point2, 4>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<Candidate>& candidates() const noexcept { return candidates_; }
  [[nodiscard]] bool degenerate() const noexcept { return degenerate_; }

  /// Both defining inequalities, with slack `tol`.
  [[nodiscard]] bool contains(Point2 p, double tol = 1e-12) const noexcept;
  [[nodiscard]] double objective(Point2 p) const noexcept;

  /// Exact extrema over the inside candidates.
  [[nodiscard]] PolygonExtrema extrema() const;

 private:
  double delta_;
  RegionKind kind_;
  bool degenerate_ = false;
  std::array<Point2, 4> vertices_{};
  std::vector<Candidate> candidates_;
};

/// Extrema of q over D(delta).
[[nodiscard]] PolygonExtrema polygon_extrema(double delta);

/// Extrema of q' over the maximum-point region.
[[nodiscard]] PolygonExtrema remark_max_extrema(double delta);

enum class BoundBranch { edge_critical, corner_p1, corner_p3 };

[[nodiscard]] std::string_view to_string(BoundBranch b) noexcept;

/// Which formula of the piecewise lower bound is active at delta (ties go to p1).
[[nodiscard]] BoundBranch q_min_bound_branch(double delta) noexcept;

/// -(2 - delta)^2 / 2 for delta >= 4/5, else
/// min{delta^2 + 2 delta - 2, (11 delta^2 - 14 delta + 2) / 3}.
/// Throws DegenerateRegion outside [1/2, 2].
[[nodiscard]] double q_min_bound(double delta);

/// Grid extrema on an n x n grid over the bounding box of the region,
/// keeping only points that satisfy both inequalities.
struct GridExtrema {
  double q_min = 0.0;
  double q_max = 0.0;
  long points_inside = 0;
};

/// Requires n >= 101.
[[nodiscard]] GridExtrema polygon_bruteforce(double delta, int n,
                                             RegionKind kind = RegionKind::min_point);

struct ThresholdConstants {
  double delta_star_min = 0.0;  ///< 2 (sqrt 6 - 2), root of delta^2 + 8 delta - 8
  double c_star_min = 0.0;      ///< (sqrt 6 + 2) / 4
  double delta_star_max = 0.0;  ///< sqrt 6 - 1
  double c_star_max = 0.0;      ///< (sqrt 6 + 1) / 5
};

[[nodiscard]] ThresholdConstants threshold_constants() noexcept;

/// delta^2 + 2 delta - 2 + q_min_bound(delta): the guaranteed lower bound for
/// Q_0303 / 2 at a minimum point.
[[nodiscard]] double min_point_sign_bound(double delta);

/// 1 + 2 delta - 2 delta^2 + max q' over the remark region: the guaranteed
/// upper bound for Q_0101 / 2 at a maximum point.
[[nodiscard]] double max_point_sign_bound(double delta);

enum class SignConclusion { positive, inconclusive };

[[nodiscard]] std::string_view to_string(SignConclusion s) noexcept;

struct GapCertificate {
  double delta = 0.0;
  double q_actual = 0.0;
  double q_lower_bound = 0.0;
  double half_q0303 = 0.0;
  /// Q_0303 / 2 by direct contraction in the Berger frame.
  double half_q0303_direct = 0.0;
  SignConclusion sign_conclusion = SignConclusion::inconclusive;
  /// Factor applied to the tensor so that K_max = 1.
  double normalization = 1.0;
  /// (x, z) lies in D(delta) within 1e-9.
  bool inside_region = true;
  ExtremaReport extrema;
  BergerReport berger;
};

/// Pointwise certificate at a minimum point of a Ricci-flat tensor.
/// Throws FlatTensor when K_max <= 1e-12, InvariantViolation when the tensor is
/// not Ricci-flat, and propagates BergerToleranceExceeded.
[[nodiscard]] GapCertificate certify_min_point(const Riemann4& r, const BergerOptions& options = {},
                                               double tol = kInvariantTol);

}  // namespace rfgap
