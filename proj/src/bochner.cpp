#include "rfgap/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rfgap/errors.hpp"

namespace rfgap {

double q_value(double x, double z) noexcept { return x * x + z * z + 4.0 * x * z; }

double half_q0303_frame(double k01, double k03, double lambda, double x, double z) noexcept {
  return k03 * k03 + 2.0 * (lambda - k03) * k01 - 2.0 * k01 * k01 + q_value(x, z);
}

double half_q0101_frame(double k01, double k03, double y, double z) noexcept {
  return k01 * k01 - 2.0 * k01 * k03 - 2.0 * k03 * k03 + q_value(y, z);
}

std::string_view to_string(CandidateKind k) noexcept {
  switch (k) {
    case CandidateKind::vertex:
      return "vertex";
    case CandidateKind::edge_critical_diagonal:
      return "edge_critical_diagonal";
    case CandidateKind::edge_critical_axis:
      return "edge_critical_axis";
    case CandidateKind::segment_stationary:
      return "segment_stationary";
    case CandidateKind::interior_stationary:
      return "interior_stationary";
  }
  return "unknown";
}

std::string_view to_string(BoundBranch b) noexcept {
  switch (b) {
    case BoundBranch::edge_critical:
      return "-(2-delta)^2/2";
    case BoundBranch::corner_p1:
      return "delta^2+2delta-2";
    case BoundBranch::corner_p3:
      return "(11delta^2-14delta+2)/3";
  }
  return "unknown";
}

std::string_view to_string(SignConclusion s) noexcept {
  return s == SignConclusion::positive ? "positive" : "inconclusive";
}

namespace {

void require_delta(double delta) {
  if (!(delta >= 0.5 && delta <= 2.0)) {
    std::ostringstream msg;
    msg << "delta = " << delta << " is outside [0.5, 2]; the region is empty or ill-posed";
    throw DegenerateRegion(msg.str());
  }
}

}  // namespace

// --- PolygonProblem ---------------------------------------------------------------

PolygonProblem::PolygonProblem(double delta, RegionKind kind) : delta_(delta), kind_(kind) {
  require_delta(delta);
  const double d = delta;
  degenerate_ = (d == 0.5 || d == 2.0);

  if (kind == RegionKind::min_point) {
    const Point2 p1{1.0, d - 1.0};
    const Point2 p3{(4.0 * d - 5.0) / 3.0, (d + 1.0) / 3.0};
    vertices_ = {p1, Point2{-p1.a, -p1.b}, p3, Point2{-p3.a, -p3.b}};
  } else {
    const Point2 r1{(4.0 - 5.0 * d) / 3.0, (1.0 + d) / 3.0};
    const Point2 r3{d, 1.0 - d};
    vertices_ = {r1, Point2{-r1.a, -r1.b}, r3, Point2{-r3.a, -r3.b}};
  }

  auto add = [&](Point2 p, CandidateKind k) {
    candidates_.push_back(Candidate{p, k, contains(p), objective(p)});
  };
  for (const Point2& v : vertices_) add(v, CandidateKind::vertex);

  if (kind == RegionKind::min_point) {
    const double s = (2.0 - d) / 2.0;
    add({s, -s}, CandidateKind::edge_critical_diagonal);
    add({-s, s}, CandidateKind::edge_critical_diagonal);
    add({2.0 * d - 1.0, 0.0}, CandidateKind::edge_critical_axis);
    add({-(2.0 * d - 1.0), 0.0}, CandidateKind::edge_critical_axis);
  } else {
    const double s = (2.0 * d - 1.0) / 2.0;
    add({-s, s}, CandidateKind::edge_critical_diagonal);
    add({s, -s}, CandidateKind::edge_critical_diagonal);
    add({2.0 - d, 0.0}, CandidateKind::edge_critical_axis);
    add({-(2.0 - d), 0.0}, CandidateKind::edge_critical_axis);
  }

  if (degenerate_) {
    // The region is a segment; restrict q to it and add the 1-D stationary point.
    Point2 e0 = vertices_[0];
    Point2 e1 = vertices_[1];
    double far = -1.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const double da = vertices_[i].a - vertices_[j].a;
        const double db = vertices_[i].b - vertices_[j].b;
        if (da * da + db * db > far) {
          far = da * da + db * db;
          e0 = vertices_[i];
          e1 = vertices_[j];
        }
      }
    const double da = e1.a - e0.a;
    const double db = e1.b - e0.b;
    const double quad = q_value(da, db);
    const double lin = (2.0 * e0.a + 4.0 * e0.b) * da + (2.0 * e0.b + 4.0 * e0.a) * db;
    if (quad != 0.0) {
      const double s = -lin / (2.0 * quad);
      if (s >= 0.0 && s <= 1.0) add({e0.a + s * da, e0.b + s * db}, CandidateKind::segment_stationary);
    }
  }

  add({0.0, 0.0}, CandidateKind::interior_stationary);
}

bool PolygonProblem::contains(Point2 p, double tol) const noexcept {
  const double d = delta_;
  if (kind_ == RegionKind::min_point) {
    return std::abs(p.a - p.b) <= 2.0 - d + tol && std::abs(p.a + 2.0 * p.b) <= 2.0 * d - 1.0 + tol;
  }
  return std::abs(p.a + 2.0 * p.b) <= 2.0 - d + tol && std::abs(p.b - p.a) <= 2.0 * d - 1.0 + tol;
}

double PolygonProblem::objective(Point2 p) const noexcept { return q_value(p.a, p.b); }

PolygonExtrema PolygonProblem::extrema() const {
  PolygonExtrema e;
  e.q_min = std::numeric_limits<double>::infinity();
  e.q_max = -std::numeric_limits<double>::infinity();
  for (const Candidate& c : candidates_) {
    if (!c.inside || c.kind == CandidateKind::interior_stationary) continue;
    if (c.q < e.q_min) {
      e.q_min = c.q;
      e.argmin = c.point;
    }
    if (c.q > e.q_max) {
      e.q_max = c.q;
      e.argmax = c.point;
    }
  }
  return e;
}

PolygonExtrema polygon_extrema(double delta) {
  return PolygonProblem(delta, RegionKind::min_point).extrema();
}

PolygonExtrema remark_max_extrema(double delta) {
  return PolygonProblem(delta, RegionKind::remark_max_point).extrema();
}

namespace {
double corner_p1(double d) { return d * d + 2.0 * d - 2.0; }
double corner_p3(double d) { return (11.0 * d * d - 14.0 * d + 2.0) / 3.0; }
}  // namespace

BoundBranch q_min_bound_branch(double delta) noexcept {
  if (delta >= 0.8) return BoundBranch::edge_critical;
  return corner_p1(delta) <= corner_p3(delta) ? BoundBranch::corner_p1 : BoundBranch::corner_p3;
}

double q_min_bound(double delta) {
  require_delta(delta);
  switch (q_min_bound_branch(delta)) {
    case BoundBranch::edge_critical:
      return -(2.0 - delta) * (2.0 - delta) / 2.0;
    case BoundBranch::corner_p1:
      return corner_p1(delta);
    case BoundBranch::corner_p3:
      return corner_p3(delta);
  }
  return 0.0;
}

GridExtrema polygon_bruteforce(double delta, int n, RegionKind kind) {
  if (n < 101) throw InvariantViolation("grid oracle needs n >= 101");
  const PolygonProblem problem(delta, kind);
  double lo_a = std::numeric_limits<double>::infinity(), hi_a = -lo_a;
  double lo_b = lo_a, hi_b = -lo_a;
  for (const Point2& v : problem.vertices()) {
    lo_a = std::min(lo_a, v.a);
    hi_a = std::max(hi_a, v.a);
    lo_b = std::min(lo_b, v.b);
    hi_b = std::max(hi_b, v.b);
  }
  GridExtrema g;
  g.q_min = std::numeric_limits<double>::infinity();
  g.q_max = -std::numeric_limits<double>::infinity();
  const double ha = (hi_a - lo_a) / (n - 1);
  const double hb = (hi_b - lo_b) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double a = lo_a + i * ha;
    for (int j = 0; j < n; ++j) {
      const Point2 p{a, lo_b + j * hb};
      if (!problem.contains(p)) continue;
      const double q = q_value(p.a, p.b);
      g.q_min = std::min(g.q_min, q);
      g.q_max = std::max(g.q_max, q);
      ++g.points_inside;
    }
  }
  return g;
}

ThresholdConstants threshold_constants() noexcept {
  const double r6 = std::sqrt(6.0);
  return {2.0 * (r6 - 2.0), (r6 + 2.0) / 4.0, r6 - 1.0, (r6 + 1.0) / 5.0};
}

double min_point_sign_bound(double delta) {
  return delta * delta + 2.0 * delta - 2.0 + q_min_bound(delta);
}

double max_point_sign_bound(double delta) {
  return 1.0 + 2.0 * delta - 2.0 * delta * delta + remark_max_extrema(delta).q_max;
}

// --- certificate ------------------------------------------------------------------

GapCertificate certify_min_point(const Riemann4& r, const BergerOptions& options, double tol) {
  const double ric = ricci(r).cwiseAbs().maxCoeff();
  if (ric > tol * std::max(1.0, r.max_abs())) {
    std::ostringstream msg;
    msg << "certificate needs a Ricci-flat tensor (max |Ric| = " << ric << ")";
    throw InvariantViolation(msg.str());
  }
  const ExtremaReport raw = extremize_sectional(r, tol);
  if (raw.k_max <= 1e-12) throw FlatTensor("K_max <= 1e-12: the tensor is flat, nothing to certify");

  GapCertificate c;
  c.normalization = 1.0 / raw.k_max;
  const Riemann4 rn = r.scaled(c.normalization);
  c.extrema = extremize_sectional(rn, tol);
  c.berger = berger_frame(rn, c.extrema, options);

  c.delta = -c.berger.k03;
  if (c.delta < 0.5 - 1e-9 || c.delta > 2.0 + 1e-9) {
    std::ostringstream msg;
    msg << "normalized K_min = " << -c.delta << " violates -2 <= K_min <= -1/2";
    throw InvariantViolation(msg.str());
  }
  const double clamped = std::clamp(c.delta, 0.5, 2.0);
  c.q_actual = q_value(c.berger.x, c.berger.z);
  c.q_lower_bound = q_min_bound(clamped);
  c.half_q0303 = half_q0303_frame(c.berger.k01, c.berger.k03, 0.0, c.berger.x, c.berger.z);
  c.half_q0303_direct = 0.5 * q_tensor(c.berger.in_frame)[idx4(0, 3, 0, 3)];
  c.sign_conclusion = c.delta > threshold_constants().delta_star_min ? SignConclusion::positive
                                                                     : SignConclusion::inconclusive;
  c.inside_region = PolygonProblem(clamped).contains({c.berger.x, c.berger.z}, 1e-9);
  return c;
}

}  // namespace rfgap
