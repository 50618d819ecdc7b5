#include "rfgap/report.hpp"

#include <cmath>
#include <limits>

namespace rfgap {

namespace {

json vec(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

json cvec(const Vec2c& v) {
  return {{v(0).real(), v(0).imag()}, {v(1).real(), v(1).imag()}};
}

json point(Point2 p) { return {p.a, p.b}; }

}  // namespace

json to_json(const Plane2& p) { return {{"u", vec(p.u())}, {"v", vec(p.v())}}; }

json to_json(const ExtremaReport& e) {
  return {{"k_max", e.k_max},
          {"k_min", e.k_min},
          {"plane_max", to_json(e.plane_max)},
          {"plane_min", to_json(e.plane_min)},
          {"method", std::string(to_string(e.method))}};
}

json to_json(const BergerReport& b) {
  json frame = json::array();
  for (int a = 0; a < 4; ++a) frame.push_back(vec(b.frame.axis(a)));
  return {{"frame", frame},
          {"k01", b.k01},
          {"k02", b.k02},
          {"k03", b.k03},
          {"x", b.x},
          {"y", b.y},
          {"z", b.z},
          {"bianchi_sum", b.x + b.y + b.z},
          {"residual_offdiag", b.residual_offdiag},
          {"residual_ineq", {b.residual_ineq[0], b.residual_ineq[1]}},
          {"residual_kmin", b.residual_kmin}};
}

json to_json(const CorollarySlacks& s) {
  return {{"lower", s.lower}, {"upper", s.upper}, {"pass", s.pass()}};
}

json to_json(const GapCertificate& c) {
  return {{"delta", c.delta},
          {"q_actual", c.q_actual},
          {"q_lower_bound", c.q_lower_bound},
          {"half_q0303", c.half_q0303},
          {"half_q0303_direct", c.half_q0303_direct},
          {"sign_conclusion", std::string(to_string(c.sign_conclusion))},
          {"normalization", c.normalization},
          {"inside_region", c.inside_region}};
}

json to_json(const HolExtremaReport& h) {
  json j{{"h_max", h.h_max},     {"h_min", h.h_min},       {"h_av", h.h_av},
         {"einstein", h.einstein}, {"dir_max", cvec(h.dir_max)}, {"dir_min", cvec(h.dir_min)}};
  if (h.einstein) {
    j["lambda"] = h.lambda;
    j["h_av_identity"] = 2.0 * h.lambda / 3.0;
  }
  return j;
}

json to_json(const SiuYangCertificate& c) {
  return {{"orientation", std::string(to_string(c.orientation))},
          {"h_min", c.h_min},
          {"h_max", c.h_max},
          {"r1111", c.r1111},
          {"r1122", c.r1122},
          {"a_value", c.a_value},
          {"b_modulus", c.b_modulus},
          {"laplacian_value", c.laplacian_value},
          {"laplacian_closed_form", c.laplacian_closed_form},
          {"frame_residual", c.frame_residual},
          {"sign_conclusion", std::string(to_string(c.sign_conclusion))}};
}

json to_json(const KahlerPinchingSlacks& s) {
  json j{{"ke_quadrature", {s.ke_quadrature[0], s.ke_quadrature[1]}},
         {"ke_identity", {s.ke_identity[0], s.ke_identity[1]}},
         {"ricci_flat", s.ricci_flat},
         {"worst", s.worst()}};
  if (s.ricci_flat) j["ke2"] = {s.ke2[0], s.ke2[1]};
  return j;
}

json polygon_report(const PolygonReportOptions& o) {
  const PolygonProblem problem(o.delta, o.region);
  json vertices = json::array();
  for (const Point2& v : problem.vertices()) vertices.push_back(point(v));
  json candidates = json::array();
  for (const Candidate& c : problem.candidates()) {
    candidates.push_back({{"point", point(c.point)},
                          {"kind", std::string(to_string(c.kind))},
                          {"inside", c.inside},
                          {"q", c.q}});
  }
  const PolygonExtrema e = problem.extrema();
  const GridExtrema g = polygon_bruteforce(o.delta, o.grid, o.region);

  json j{{"delta", o.delta},
         {"region", o.region == RegionKind::min_point ? "min_point" : "remark_max_point"},
         {"degenerate", problem.degenerate()},
         {"vertices", vertices},
         {"candidates", candidates},
         {"exact", {{"q_min", e.q_min}, {"argmin", point(e.argmin)}, {"q_max", e.q_max}, {"argmax", point(e.argmax)}}},
         {"grid", {{"n", o.grid}, {"q_min", g.q_min}, {"q_max", g.q_max}, {"points_inside", g.points_inside}}},
         {"gap", {{"q_min", std::abs(e.q_min - g.q_min)}, {"q_max", std::abs(e.q_max - g.q_max)}}}};
  if (o.region == RegionKind::min_point) {
    j["q_min_bound"] = q_min_bound(o.delta);
    j["bound_branch"] = std::string(to_string(q_min_bound_branch(o.delta)));
    j["sign_bound"] = min_point_sign_bound(o.delta);
  } else {
    j["sign_bound"] = max_point_sign_bound(o.delta);
  }

  if (o.dump_grid) {
    double lo_a = std::numeric_limits<double>::infinity(), hi_a = -lo_a, lo_b = lo_a, hi_b = -lo_a;
    for (const Point2& v : problem.vertices()) {
      lo_a = std::min(lo_a, v.a);
      hi_a = std::max(hi_a, v.a);
      lo_b = std::min(lo_b, v.b);
      hi_b = std::max(hi_b, v.b);
    }
    json pts = json::array();
    for (int i = 0; i < o.grid; ++i)
      for (int k = 0; k < o.grid; ++k) {
        const Point2 p{lo_a + i * (hi_a - lo_a) / (o.grid - 1), lo_b + k * (hi_b - lo_b) / (o.grid - 1)};
        if (problem.contains(p)) pts.push_back({p.a, p.b, q_value(p.a, p.b)});
      }
    j["grid_points"] = pts;
  }
  return j;
}

json thresholds_report() {
  const ThresholdConstants t = threshold_constants();
  const KahlerThresholds k = kahler_thresholds();
  auto entry = [](const char* name, const char* expr, double v, const char* rel, double residual) {
    return json{{"name", name}, {"expression", expr}, {"value", v}, {"relation", rel}, {"relation_residual", residual}};
  };
  const double d = t.delta_star_min, m = t.delta_star_max;
  json constants = json::array(
      {entry("delta_star_min", "2(sqrt6-2)", d, "delta^2+8delta-8=0", d * d + 8.0 * d - 8.0),
       entry("c_star_min", "(sqrt6+2)/4", t.c_star_min, "c*delta_star_min=1", t.c_star_min * d - 1.0),
       entry("delta_star_max", "sqrt6-1", m, "delta^2+2delta-5=0", m * m + 2.0 * m - 5.0),
       entry("c_star_max", "(sqrt6+1)/5", t.c_star_max, "c*delta_star_max=1", t.c_star_max * m - 1.0),
       entry("kahler_c_min_case", "(1+sqrt3)/2", k.c_min_case, "4c^2-4c-2=0",
             4.0 * k.c_min_case * k.c_min_case - 4.0 * k.c_min_case - 2.0),
       entry("kahler_c_max_case", "sqrt3-1", k.c_max_case, "c^2+2c-2=0",
             k.c_max_case * k.c_max_case + 2.0 * k.c_max_case - 2.0)});
  json pairs = json::array(
      {json{{"pair", {"delta_star_min", "c_star_min"}}, {"product", d * t.c_star_min}},
       json{{"pair", {"delta_star_max", "c_star_max"}}, {"product", m * t.c_star_max}},
       json{{"pair", {"kahler_c_min_case", "kahler_c_max_case"}}, {"product", k.c_min_case * k.c_max_case}}});
  return {{"constants", constants}, {"reciprocal_pairs", pairs}};
}

}  // namespace rfgap
