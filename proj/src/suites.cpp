#include "rfgap/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "rfgap/bochner.hpp"
#include "rfgap/grassmann.hpp"
#include "rfgap/kahler.hpp"
#include "rfgap/rng.hpp"

namespace rfgap {

namespace {

struct Outcome {
  std::vector<Failure> failures;
  long checks = 0;
  std::map<std::string, long> counts;
  std::map<std::string, std::pair<double, double>> ranges;
};

class Check {
 public:
  Check(Outcome& out, long index, std::uint64_t seed) : out_(out), index_(index), seed_(seed) {}

  void near(const std::string& name, double observed, double expected, double tol) {
    ++out_.checks;
    if (!(std::abs(observed - expected) <= tol)) fail(name, observed, expected, tol);
  }
  void at_least(const std::string& name, double observed, double bound, double tol) {
    ++out_.checks;
    if (!(observed >= bound - tol)) fail(name, observed, bound, tol);
  }
  void at_most(const std::string& name, double observed, double bound, double tol) {
    ++out_.checks;
    if (!(observed <= bound + tol)) fail(name, observed, bound, tol);
  }
  void truth(const std::string& name, bool ok, const std::string& detail = {}) {
    ++out_.checks;
    if (!ok) fail(name, 0.0, 1.0, 0.0, detail);
  }
  void error(const std::string& stage, const std::exception& e) {
    ++out_.checks;
    fail(stage, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, e.what());
  }
  void count(const std::string& name) { ++out_.counts[name]; }
  void range(const std::string& name, double v) {
    auto it = out_.ranges.find(name);
    if (it == out_.ranges.end()) {
      out_.ranges.emplace(name, std::make_pair(v, v));
    } else {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  }

 private:
  void fail(const std::string& name, double obs, double exp, double tol, const std::string& detail = {}) {
    out_.failures.push_back(Failure{index_, seed_, name, obs, exp, tol, detail});
  }

  Outcome& out_;
  long index_;
  std::uint64_t seed_;
};

template <class F>
std::vector<Outcome> run_parallel(long n, int jobs, F fn) {
  std::vector<Outcome> out(static_cast<std::size_t>(std::max(0L, n)));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long i = next++; i < n; i = next++) fn(i, out[static_cast<std::size_t>(i)]);
  };
  const int workers = static_cast<int>(std::clamp<long>(jobs, 1, std::max(1L, n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

void merge(SuiteResult& r, const Outcome& o) {
  r.checks += o.checks;
  r.failures.insert(r.failures.end(), o.failures.begin(), o.failures.end());
  for (const auto& [k, v] : o.counts) r.counts[k] += v;
  for (const auto& [k, v] : o.ranges) {
    auto it = r.ranges.find(k);
    if (it == r.ranges.end()) {
      r.ranges.emplace(k, v);
    } else {
      it->second.first = std::min(it->second.first, v.first);
      it->second.second = std::max(it->second.second, v.second);
    }
  }
}

double max_diff(const Tensor4& a, const Tensor4& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

double max_abs(const Tensor4& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// B and Q with the summation loops nested the other way round.
Tensor4 b_by_slots(const Riemann4& r) {
  Tensor4 b{};
  for (int q = 0; q < 4; ++q)
    for (int p = 0; p < 4; ++p)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) b[idx4(i, j, k, l)] += r(i, p, j, q) * r(k, p, l, q);
  return b;
}

Tensor4 q_from_b(const Tensor4& b) {
  Tensor4 q{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          q[idx4(i, j, k, l)] =
              2.0 * (b[idx4(i, j, k, l)] - b[idx4(i, j, l, k)] + b[idx4(i, k, j, l)] - b[idx4(i, l, j, k)]);
  return q;
}

constexpr int kPlanesPerSample = 10;

// --- core ---

void core_sample(const SuiteOptions& opt, long i, Outcome& o) {
  const std::uint64_t seed = stream_seed(opt.seed, static_cast<std::uint64_t>(i));
  Check c(o, i, seed);
  try {
    const WeylBlocks w = sample_ricci_flat(seed, 1.0);
    const WeylBlocks w2 = sample_ricci_flat(seed, 1.0);
    c.truth("sampler_determinism", w.w_plus == w2.w_plus && w.w_minus == w2.w_minus);
    c.at_most("sampler_entry_bound",
              std::max(w.w_plus.cwiseAbs().maxCoeff(), w.w_minus.cwiseAbs().maxCoeff()), 1.0, 0.0);
    const Riemann4 r = to_riemann(w);

    const InvariantAudit a = audit_invariants(r.components());
    c.at_most("antisymmetry", a.antisymmetry, 0.0, 1e-12);
    c.at_most("pair_symmetry", a.pair_symmetry, 0.0, 1e-12);
    c.at_most("first_bianchi", a.bianchi, 0.0, 1e-12);
    c.at_most("ricci_flat_reconstruction", ricci(r).cwiseAbs().maxCoeff(), 0.0, 1e-10);

    // Projection: invariants, idempotence, fixes valid tensors.
    SampleStream s(stream_seed(seed, 1));
    Tensor4 raw{};
    for (double& v : raw) v = s.uniform(-1.0, 1.0);
    const Tensor4 p1 = opt.hooks.symmetrize(raw);
    const InvariantAudit pa = audit_invariants(p1);
    c.at_most("symmetrize_antisymmetry", pa.antisymmetry, 0.0, 1e-12);
    c.at_most("symmetrize_pair_symmetry", pa.pair_symmetry, 0.0, 1e-12);
    c.at_most("symmetrize_bianchi", pa.bianchi, 0.0, 1e-12);
    c.at_most("symmetrize_idempotent", max_diff(opt.hooks.symmetrize(p1), p1), 0.0, 1e-14);
    c.at_most("symmetrize_fixes_valid", max_diff(opt.hooks.symmetrize(r.components()), r.components()), 0.0,
              1e-14);

    // Two summation orders.
    const Tensor4 b = b_tensor(r);
    const Tensor4 b2 = b_by_slots(r);
    c.at_most("b_tensor_summation_order", max_diff(b, b2), 0.0, 1e-12 * std::max(1.0, max_abs(b2)));
    const Tensor4 q2 = q_from_b(b2);
    c.at_most("q_tensor_summation_order", max_diff(q_tensor(r), q2), 0.0, 1e-12 * std::max(1.0, max_abs(q2)));

    // Weyl round trip.
    const SelfDualSplit sp = split_self_dual(r);
    c.at_most("weyl_round_trip_plus", (sp.plus - w.w_plus).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    c.at_most("weyl_round_trip_minus", (sp.minus - w.w_minus).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    c.at_most("weyl_cross_block", sp.cross_block, 0.0, 1e-12);

    // Plane duality and basis independence.
    for (int k = 0; k < kPlanesPerSample; ++k) {
      const Plane2 pl = random_plane(stream_seed(seed, 100 + static_cast<std::uint64_t>(k)));
      const double kp = sectional(r, pl);
      c.near("plane_duality", sectional(r, pl.complement()), kp, 1e-10);
      const double th = s.uniform(0.0, 2.0 * M_PI);
      const Plane2 rot(std::cos(th) * pl.u() + std::sin(th) * pl.v(), -std::sin(th) * pl.u() + std::cos(th) * pl.v());
      c.near("sectional_basis_invariance", sectional(r, rot), kp, 1e-12);
    }

    const Frame4 f = random_frame(stream_seed(seed, 2));
    c.at_most("conjugation_round_trip",
              max_diff(conjugate(conjugate(r, f), f.transposed()).components(), r.components()), 0.0, 1e-12);
  } catch (const std::exception& e) {
    c.error("core_exception", e);
  }
}

// --- berger ---

void berger_sample(const SuiteOptions& opt, long i, Outcome& o) {
  const std::uint64_t seed = stream_seed(opt.seed, static_cast<std::uint64_t>(i));
  Check c(o, i, seed);
  try {
    const Riemann4 r = to_riemann(sample_ricci_flat(seed, 1.0));
    const ExtremaReport e = extremize_sectional(r);
    c.truth("eigen_oracle_selected", e.method == ExtremaMethod::eigen_oracle);
    const ExtremaReport n = extremize_sectional_numeric(r);
    c.near("oracle_agreement_k_max", n.k_max, e.k_max, 1e-8);
    c.near("oracle_agreement_k_min", n.k_min, e.k_min, 1e-8);
    c.near("plane_max_attains", sectional(r, e.plane_max), e.k_max, 1e-8);
    c.near("plane_min_attains", sectional(r, e.plane_min), e.k_min, 1e-8);

    const CorollarySlacks cs = corollary_bounds_check(e);
    c.at_least("corollary_lower", cs.lower, 0.0, 1e-8);
    c.at_least("corollary_upper", cs.upper, 0.0, 1e-8);

    for (int k = 0; k < kPlanesPerSample; ++k) {
      const double kp = sectional(r, random_plane(stream_seed(seed, 100 + static_cast<std::uint64_t>(k))));
      c.at_most("probe_below_k_max", kp, e.k_max, 1e-8);
      c.at_least("probe_above_k_min", kp, e.k_min, 1e-8);
    }

    const Frame4 f = random_frame(stream_seed(seed, 2));
    const Riemann4 rc = conjugate(r, f);
    const ExtremaReport ec = extremize_sectional(rc);
    c.near("rotation_invariance_k_max", ec.k_max, e.k_max, 1e-8);
    c.near("rotation_invariance_k_min", ec.k_min, e.k_min, 1e-8);

    SampleStream s(stream_seed(seed, 3));
    const double t = s.uniform(0.1, 10.0);
    const ExtremaReport es = extremize_sectional(r.scaled(t));
    c.near("scaling_equivariance_k_max", es.k_max, t * e.k_max, 1e-8 * t);
    c.near("scaling_equivariance_k_min", es.k_min, t * e.k_min, 1e-8 * t);

    const GapCertificate g = certify_min_point(r);
    const BergerReport& b = g.berger;
    c.at_most("berger_offdiag_residual", b.residual_offdiag, 0.0, 1e-6);
    c.at_most("berger_offdiag_audit", max_offdiag_residual(b.in_frame), 0.0, 1e-6);
    c.at_least("berger_ineq_xz", b.residual_ineq[0], 0.0, 1e-8);
    c.at_least("berger_ineq_zy", b.residual_ineq[1], 0.0, 1e-8);
    c.near("berger_bianchi_sum", b.x + b.y + b.z, 0.0, 1e-10);
    c.at_least("berger_order_k01_k02", b.k01 - b.k02, 0.0, 1e-8);
    c.at_least("berger_order_k02_k03", b.k02 - b.k03, 0.0, 1e-8);
    c.near("berger_k01_is_k_max", b.k01, g.extrema.k_max, 1e-8);
    c.near("berger_k03_is_k_min", b.k03, g.extrema.k_min, 1e-8);

    const double direct = g.half_q0303_direct;
    c.near("frame_formula_equivalence", g.half_q0303, direct, 1e-8 * std::max(1.0, std::abs(direct)));
    c.at_least("q_above_bound", g.q_actual, g.q_lower_bound, 1e-9);
    c.truth("xz_inside_region", g.inside_region);
    c.near("half_q0303_specialization", g.half_q0303, g.delta * g.delta + 2.0 * g.delta - 2.0 + g.q_actual, 1e-10);
    if (g.sign_conclusion == SignConclusion::positive) {
      c.count("positive_certificates");
      c.truth("certificate_soundness", g.half_q0303 > 0.0 && direct > 0.0);
    }
    if (g.delta > threshold_constants().delta_star_min + 1e-3) {
      c.count("delta_above_threshold_margin");
      c.truth("theorem1_pointwise_core", direct > 0.0);
    }
    c.range("delta", g.delta);

    const GapCertificate gc = certify_min_point(rc);
    c.near("frame_independence_k01", gc.berger.k01, b.k01, 1e-8);
    c.near("frame_independence_k02", gc.berger.k02, b.k02, 1e-8);
    c.near("frame_independence_k03", gc.berger.k03, b.k03, 1e-8);
  } catch (const BergerToleranceExceeded& e) {
    c.error("berger_tolerance", e);
  } catch (const std::exception& e) {
    c.error("berger_exception", e);
  }
}

// --- polygon ---

double remark_q_max_formula(double d) {
  double m = std::max((2.0 * d * d - 14.0 * d + 11.0) / 3.0, 1.0 + 2.0 * d - 2.0 * d * d);
  if (d >= 1.0) m = std::max(m, (2.0 - d) * (2.0 - d));
  return m;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void polygon_sample(const SuiteOptions& opt, long i, Outcome& o) {
  const std::uint64_t seed = stream_seed(opt.seed, static_cast<std::uint64_t>(i));
  Check c(o, i, seed);
  try {
    SampleStream s(seed);
    const double d = s.uniform(0.5, 2.0);
    const ThresholdConstants tc = threshold_constants();

    const PolygonExtrema e = polygon_extrema(d);
    const GridExtrema g = polygon_bruteforce(d, 2001);
    c.near("grid_oracle_q_min", g.q_min, e.q_min, 5e-3);
    c.near("grid_oracle_q_max", g.q_max, e.q_max, 5e-3);
    c.at_most("grid_not_below_exact_min", e.q_min, g.q_min, 1e-12);
    c.near("bound_attained", e.q_min, q_min_bound(d), 1e-12);

    const PolygonExtrema re = remark_max_extrema(d);
    const GridExtrema rg = polygon_bruteforce(d, 2001, RegionKind::remark_max_point);
    c.near("remark_grid_oracle_q_min", rg.q_min, re.q_min, 5e-3);
    c.near("remark_grid_oracle_q_max", rg.q_max, re.q_max, 5e-3);
    c.near("remark_q_max_formula", re.q_max, remark_q_max_formula(d), 1e-12);

    const PolygonProblem pp(d);
    const double h = (2.0 - d) / 2.0;
    c.truth("edge_critical_containment", pp.contains({h, -h}) == (d >= 0.8));
    c.at_least("corner_dominance",
               std::min(d * d + 2.0 * d - 2.0, (11.0 * d * d - 14.0 * d + 2.0) / 3.0), -(2.0 - d) * (2.0 - d) / 2.0,
               1e-12);
    c.truth("min_point_sign", (min_point_sign_bound(d) > 0.0) == (d > tc.delta_star_min));
    c.truth("max_point_sign", (max_point_sign_bound(d) < 0.0) == (d > tc.delta_star_max));
    c.range("delta", d);
  } catch (const std::exception& e) {
    c.error("polygon_exception", e);
  }
}

void polygon_sweep(Outcome& o) {
  Check c(o, -1, 0);
  try {
    const ThresholdConstants tc = threshold_constants();
    long outside_mismatch = 0, dominance = 0;
    for (int k = 0; k <= 15000; ++k) {
      const double d = 0.5 + 1e-4 * k;
      const double h = (2.0 - d) / 2.0;
      if (PolygonProblem(d).contains({h, -h}) != (d >= 0.8 - 1e-12)) ++outside_mismatch;
      const double corners = std::min(d * d + 2.0 * d - 2.0, (11.0 * d * d - 14.0 * d + 2.0) / 3.0);
      if (corners < -(2.0 - d) * (2.0 - d) / 2.0 - 1e-12) ++dominance;
    }
    c.near("sweep_edge_critical_containment", static_cast<double>(outside_mismatch), 0.0, 0.0);
    c.near("sweep_corner_dominance", static_cast<double>(dominance), 0.0, 0.0);

    const double root = bisect(min_point_sign_bound, 0.8, 1.0);
    c.near("threshold_bisection_min", root, tc.delta_star_min, 1e-9);
    c.at_most("threshold_boundary_value", min_point_sign_bound(tc.delta_star_min), 0.0, 1e-9);
    c.near("threshold_quadratic_root", tc.delta_star_min * tc.delta_star_min + 8.0 * tc.delta_star_min - 8.0, 0.0,
           1e-12);
    c.near("threshold_reciprocal_min", tc.delta_star_min * tc.c_star_min, 1.0, 1e-14);
    const double rroot = bisect(max_point_sign_bound, 1.2, 1.8);
    c.near("threshold_bisection_max", rroot, tc.delta_star_max, 1e-9);
    c.near("threshold_reciprocal_max", tc.delta_star_max * tc.c_star_max, 1.0, 1e-14);

    c.near("degenerate_half_q_min", polygon_extrema(0.5).q_min, -0.75, 1e-12);
    c.near("degenerate_two_q_min", polygon_extrema(2.0).q_min, 0.0, 1e-12);
  } catch (const std::exception& e) {
    c.error("polygon_sweep_exception", e);
  }
}

// --- kahler ---

Vec2c random_direction(SampleStream& s) {
  Vec2c v;
  for (int k = 0; k < 2; ++k) {
    const double re = s.normal();
    v(k) = cplx(re, s.normal());
  }
  return v / v.norm();
}

void kahler_sample(const SuiteOptions& opt, long i, Outcome& o) {
  const std::uint64_t seed = stream_seed(opt.seed, static_cast<std::uint64_t>(i));
  Check c(o, i, seed);
  try {
    const KahlerCurv2 r = sample_ricci_flat_kahler(seed, 1.0);
    c.truth("sampler_determinism", r == sample_ricci_flat_kahler(seed, 1.0));
    c.at_most("kahler_symmetry", kahler_symmetry_residual(r.components()), 0.0, 1e-15);
    c.at_most("kahler_ricci_flat", kahler_ricci(r).cwiseAbs().maxCoeff(), 0.0, 1e-10);

    const SiuYangCertificate y = siu_yang_laplacian(r);
    const double hmin = y.h_min, hmax = y.h_max;
    c.near("a_equals_minus_3_h_min", y.a_value, -3.0 * hmin, 1e-7);
    c.near("b_equals_2_h_max_plus_h_min", y.b_modulus, 2.0 * hmax + hmin, 1e-7);
    c.near("h_av_quadrature_zero", y.extrema.h_av, 0.0, 1e-7);
    c.near("h_av_identity", y.extrema.h_av, 2.0 * y.extrema.lambda / 3.0, 1e-10);
    c.near("siu_yang_closed_form", y.laplacian_value, y.laplacian_closed_form, 1e-8);
    c.near("r1122_is_minus_h_min", y.r1122, -hmin, 1e-8);
    c.at_most("critical_frame_residual", y.frame_residual, 0.0, 1e-7);

    const KahlerPinchingSlacks ps = kahler_pinching_bounds(y.extrema);
    c.at_least("ke_lower", std::min(ps.ke_quadrature[0], ps.ke_identity[0]), 0.0, 1e-8);
    c.at_least("ke_upper", std::min(ps.ke_quadrature[1], ps.ke_identity[1]), 0.0, 1e-8);
    c.truth("ke2_applies", ps.ricci_flat);
    c.at_least("ke2_lower", ps.ke2[0], 0.0, 1e-8);
    c.at_least("ke2_upper", ps.ke2[1], 0.0, 1e-8);

    SampleStream s(stream_seed(seed, 5));
    for (int k = 0; k < kPlanesPerSample; ++k) {
      const double h = hol_sectional(r, random_direction(s));
      c.at_most("probe_below_h_max", h, hmax, 1e-8);
      c.at_least("probe_above_h_min", h, hmin, 1e-8);
    }

    const SiuYangCertificate ym = siu_yang_laplacian(r, Orientation::max_frame);
    c.near("siu_yang_closed_form_max_frame", ym.laplacian_value, ym.laplacian_closed_form, 1e-8);
    c.near("a_equals_minus_3_h_max", ym.a_value, -3.0 * hmax, 1e-7);
    c.near("b_equals_minus_h_max_minus_2_h_min", ym.b_modulus, -(hmax + 2.0 * hmin), 1e-7);

    const SiuYangCertificate yu = siu_yang_laplacian(conjugate_kahler(r, random_unitary(stream_seed(seed, 3))));
    c.near("unitary_invariance_h_max", yu.h_max, hmax, 1e-8);
    c.near("unitary_invariance_h_min", yu.h_min, hmin, 1e-8);
    c.near("unitary_invariance_laplacian", yu.laplacian_value, y.laplacian_value, 1e-8);
    if (y.sign_conclusion == KahlerSign::negative) c.count("negative_certificates");

    if (i % 5 == 0) {
      SampleStream ls(stream_seed(seed, 4));
      const double mag = ls.uniform(0.1, 1.0);
      const double lambda = ls.unit() < 0.5 ? -mag : mag;
      const KahlerCurv2 re = sample_einstein_kahler(stream_seed(seed, 6), lambda, 1.0);
      const HolExtremaReport he = extremize_hol(re);
      c.count("einstein_samples");
      c.truth("einstein_detected", he.einstein);
      c.near("einstein_lambda", he.lambda, lambda, 1e-12);
      c.near("einstein_h_av_identity", he.h_av, 2.0 * lambda / 3.0, 1e-10);
      const KahlerPinchingSlacks pe = kahler_pinching_bounds(he);
      c.at_least("einstein_ke_lower", std::min(pe.ke_quadrature[0], pe.ke_identity[0]), 0.0, 1e-8);
      c.at_least("einstein_ke_upper", std::min(pe.ke_quadrature[1], pe.ke_identity[1]), 0.0, 1e-8);
    }
  } catch (const std::exception& e) {
    c.error("kahler_exception", e);
  }
}

void kahler_sweep(Outcome& o) {
  Check c(o, -1, 0);
  try {
    for (int k = 0; k <= 30; ++k) {
      const double b = 0.1 * k;
      const KahlerCurv2 r = family_f(b);
      const SiuYangCertificate y = siu_yang_laplacian(r);
      c.near("family_h_min", y.h_min, -1.0, 1e-9);
      c.near("family_h_max", y.h_max, (1.0 + b) / 2.0, 1e-9);
      c.near("family_laplacian", y.laplacian_value, b * b - 3.0, 1e-9);
      c.truth("family_sign", (y.sign_conclusion == KahlerSign::negative) == (b * b < 3.0));
      const SiuYangCertificate ym = siu_yang_laplacian(r, Orientation::max_frame);
      c.near("family_laplacian_max_frame", ym.laplacian_value, (3.0 - b * b - 6.0 * b) / 2.0, 1e-9);
    }
    const KahlerThresholds kt = kahler_thresholds();
    auto ratio_root = [&](Orientation orient) {
      const double b = bisect(
          [&](double bb) { return siu_yang_laplacian(family_f(bb), orient).laplacian_value; }, 0.0, 3.0);
      return (1.0 + b) / 2.0;
    };
    c.near("threshold_flip_min_frame", ratio_root(Orientation::min_frame), kt.c_min_case, 1e-9);
    c.near("threshold_flip_max_frame", ratio_root(Orientation::max_frame), kt.c_max_case, 1e-9);
    c.near("threshold_product", kt.c_min_case * kt.c_max_case, 1.0, 1e-14);

    const KahlerPinchingSlacks s0 = kahler_pinching_bounds(extremize_hol(family_f(0.0)));
    const KahlerPinchingSlacks s3 = kahler_pinching_bounds(extremize_hol(family_f(3.0)));
    c.near("ke2_saturation_b0", s0.ke2[0], 0.0, 1e-9);
    c.near("ke2_saturation_b3", s3.ke2[1], 0.0, 1e-9);
  } catch (const std::exception& e) {
    c.error("kahler_sweep_exception", e);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"core", "berger", "polygon", "kahler"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  SuiteOptions opt = options;
  if (!opt.hooks.symmetrize) opt.hooks.symmetrize = [](const Tensor4& t) { return symmetrize(t).components(); };

  SuiteResult r;
  r.suite = name;
  r.samples = opt.samples;
  r.seed = opt.seed;

  std::function<void(long, Outcome&)> sample;
  std::function<void(Outcome&)> sweep;
  if (name == "core") {
    sample = [&](long i, Outcome& o) { core_sample(opt, i, o); };
  } else if (name == "berger") {
    sample = [&](long i, Outcome& o) { berger_sample(opt, i, o); };
  } else if (name == "polygon") {
    sample = [&](long i, Outcome& o) { polygon_sample(opt, i, o); };
    sweep = polygon_sweep;
  } else if (name == "kahler") {
    sample = [&](long i, Outcome& o) { kahler_sample(opt, i, o); };
    sweep = kahler_sweep;
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }

  if (sweep) {
    Outcome o;
    sweep(o);
    merge(r, o);
  }
  for (const Outcome& o : run_parallel(opt.samples, opt.jobs, sample)) merge(r, o);
  return r;
}

json to_json(const SuiteResult& r) {
  json failures = json::array();
  for (const Failure& f : r.failures) {
    json j{{"index", f.index},         {"seed", f.seed},         {"check", f.check},
           {"observed", f.observed},   {"expected", f.expected}, {"tolerance", f.tolerance}};
    if (!f.detail.empty()) j["detail"] = f.detail;
    failures.push_back(j);
  }
  json ranges = json::object();
  for (const auto& [k, v] : r.ranges) ranges[k] = {v.first, v.second};
  return {{"suite", r.suite},
          {"samples", r.samples},
          {"seed", r.seed},
          {"checks", r.checks},
          {"status", r.pass() ? "pass" : "fail"},
          {"failures", failures},
          {"counts", r.counts},
          {"ranges", ranges}};
}

json run_verify(const std::string& name, const SuiteOptions& options, bool& passed) {
  if (name != "all") {
    const SuiteResult r = run_suite(name, options);
    passed = r.pass();
    return to_json(r);
  }
  passed = true;
  json suites = json::array();
  for (const std::string& s : suite_names()) {
    const SuiteResult r = run_suite(s, options);
    passed = passed && r.pass();
    suites.push_back(to_json(r));
  }
  return {{"suite", "all"},
          {"samples", options.samples},
          {"seed", options.seed},
          {"status", passed ? "pass" : "fail"},
          {"suites", suites}};
}

}  // namespace rfgap
