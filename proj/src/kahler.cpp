#include "rfgap/kahler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "rfgap/rng.hpp"
#include "rfgap/sphere_search.hpp"

namespace rfgap {

namespace {

template <class F>
void for_each_index(F&& f) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) f(a, b, c, d);
}

// Writes every member of the six symmetry orbits from one representative each.
KArray fill_orbits(double r1111, double r2222, double r1122, cplx r1212, cplx r1112, cplx r1222) {
  KArray c{};
  c[idx_k(0, 0, 0, 0)] = r1111;
  c[idx_k(1, 1, 1, 1)] = r2222;
  for (auto i : {idx_k(0, 0, 1, 1), idx_k(1, 0, 0, 1), idx_k(0, 1, 1, 0), idx_k(1, 1, 0, 0)}) c[i] = r1122;
  c[idx_k(0, 1, 0, 1)] = r1212;
  c[idx_k(1, 0, 1, 0)] = std::conj(r1212);
  c[idx_k(0, 0, 0, 1)] = c[idx_k(0, 1, 0, 0)] = r1112;
  c[idx_k(0, 0, 1, 0)] = c[idx_k(1, 0, 0, 0)] = std::conj(r1112);
  c[idx_k(0, 1, 1, 1)] = c[idx_k(1, 1, 0, 1)] = r1222;
  c[idx_k(1, 0, 1, 1)] = c[idx_k(1, 1, 1, 0)] = std::conj(r1222);
  return c;
}

double scale_of(const KArray& c) {
  double m = 0.0;
  for (const cplx& z : c) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

// --- KahlerCurv2 --------------------------------------------------------------------

double kahler_symmetry_residual(const KArray& c) {
  double worst = 0.0;
  for_each_index([&](int a, int b, int cc, int d) {
    const cplx r = c[idx_k(a, b, cc, d)];
    worst = std::max({worst, std::abs(r - c[idx_k(cc, b, a, d)]), std::abs(r - c[idx_k(a, d, cc, b)]),
                      std::abs(std::conj(r) - c[idx_k(b, a, d, cc)])});
  });
  return worst;
}

KahlerCurv2 KahlerCurv2::validated(const KArray& components, double tol) {
  const double res = kahler_symmetry_residual(components);
  if (res > tol * std::max(1.0, scale_of(components))) {
    std::ostringstream msg;
    msg << "Kahler symmetry violated by " << res;
    throw InvariantViolation(msg.str());
  }
  return KahlerCurv2(components);
}

double KahlerCurv2::max_abs() const noexcept { return scale_of(c_); }

KahlerCurv2 KahlerCurv2::scaled(double t) const noexcept {
  KahlerCurv2 out = *this;
  for (cplx& z : out.c_) z *= t;
  return out;
}

KahlerCurv2 kahler_symmetrize(const KArray& raw) {
  // The group is {1, T} x {1, S1, S2, S1 S2}; average over each factor in turn.
  KArray k{};
  for_each_index([&](int a, int b, int c, int d) {
    k[idx_k(a, b, c, d)] =
        0.25 * (raw[idx_k(a, b, c, d)] + raw[idx_k(c, b, a, d)] + raw[idx_k(a, d, c, b)] + raw[idx_k(c, d, a, b)]);
  });
  KArray out{};
  for_each_index([&](int a, int b, int c, int d) {
    out[idx_k(a, b, c, d)] = 0.5 * (k[idx_k(a, b, c, d)] + std::conj(k[idx_k(b, a, d, c)]));
  });
  return KahlerCurv2(out);
}

Mat2c kahler_ricci(const KahlerCurv2& r) {
  Mat2c ric = Mat2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) ric(a, b) = r(a, b, 0, 0) + r(a, b, 1, 1);
  return ric;
}

KahlerEinstein kahler_einstein(const KahlerCurv2& r) {
  const Mat2c ric = kahler_ricci(r);
  KahlerEinstein e;
  e.lambda = 0.5 * (ric(0, 0).real() + ric(1, 1).real());
  e.residual = (ric - e.lambda * Mat2c::Identity()).cwiseAbs().maxCoeff();
  return e;
}

// --- holomorphic sectional curvature ------------------------------------------------

double hol_sectional(const KahlerCurv2& r, const Vec2c& v) {
  cplx h = 0.0;
  for_each_index([&](int a, int b, int c, int d) {
    h += v(a) * std::conj(v(b)) * v(c) * std::conj(v(d)) * r(a, b, c, d);
  });
  return h.real();
}

Vec2c chart_point(double t, double phi) {
  return Vec2c(std::cos(t), std::polar(std::sin(t), phi));
}

Vec2c direction_from_bloch(const Eigen::Vector3d& n) {
  const double t = 0.5 * std::acos(std::clamp(n(2) / std::max(n.norm(), 1e-300), -1.0, 1.0));
  return chart_point(t, std::atan2(n(1), n(0)));
}

Eigen::Vector3d bloch_from_direction(const Vec2c& v) {
  const cplx rho12 = v(0) * std::conj(v(1));
  return {2.0 * rho12.real(), -2.0 * rho12.imag(), std::norm(v(0)) - std::norm(v(1))};
}

BlochForm bloch_form(const KahlerCurv2& r) {
  const cplx i(0.0, 1.0);
  std::array<Mat2c, 4> sigma;
  sigma[0] = Mat2c::Identity();
  sigma[1] << 0.0, 1.0, 1.0, 0.0;
  sigma[2] << 0.0, -i, i, 0.0;
  sigma[3] << 1.0, 0.0, 0.0, -1.0;

  Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      cplx s = 0.0;
      for_each_index([&](int a, int b, int cc, int d) {
        s += r(a, b, cc, d) * sigma[mu](a, b) * sigma[nu](cc, d);
      });
      c(mu, nu) = s.real();
    }
  c = 0.5 * (c + c.transpose()).eval();

  BlochForm f;
  f.constant = 0.25 * c(0, 0);
  f.lin = 0.5 * c.block<3, 1>(1, 0);
  f.quad = 0.25 * c.block<3, 3>(1, 1);
  return f;
}

HolExtremaReport extremize_hol(const KahlerCurv2& r, double einstein_tol) {
  const BlochForm b = bloch_form(r);
  SphereQuadratic<1> f;
  f.quad = b.quad;
  f.lin = b.lin;
  f.constant = b.constant;

  std::vector<SphereQuadratic<1>::Vec> starts;
  for (const auto& p : fibonacci_sphere(16, 0.3)) starts.emplace_back(p);
  const auto hi = maximize_on_spheres<1>(f, starts);
  const auto lo = minimize_on_spheres<1>(f, starts);
  if (!hi.converged || !lo.converged) {
    std::ostringstream msg;
    msg << "CP^1 search stalled (gradient norms " << hi.gradient_norm << ", " << lo.gradient_norm << ")";
    throw NonConvergence(msg.str());
  }

  HolExtremaReport rep;
  rep.dir_max = direction_from_bloch(hi.point);
  rep.dir_min = direction_from_bloch(lo.point);
  rep.h_max = hol_sectional(r, rep.dir_max);
  rep.h_min = hol_sectional(r, rep.dir_min);
  rep.h_av = hol_average_quadrature(r);
  const KahlerEinstein e = kahler_einstein(r);
  rep.einstein = e.residual <= einstein_tol * std::max(1.0, r.max_abs());
  rep.lambda = e.lambda;
  return rep;
}

HolGridExtrema hol_extrema_grid(const KahlerCurv2& r, int n) {
  HolGridExtrema g{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < n; ++i) {
    const double t = (M_PI / 2.0) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double h = hol_sectional(r, chart_point(t, 2.0 * M_PI * j / n));
      g.h_min = std::min(g.h_min, h);
      g.h_max = std::max(g.h_max, h);
    }
  }
  return g;
}

double hol_average_quadrature(const KahlerCurv2& r) {
  // Normalized area measure on CP^1 = S^2 is du dphi / (4 pi) with u = cos 2t.
  // H is a polynomial of degree 2 in u and a trigonometric polynomial of
  // degree 2 in phi, so both rules are exact.
  constexpr int kPhi = 16;
  auto ring_mean = [&](double u) {
    const double t = 0.5 * std::acos(std::clamp(u, -1.0, 1.0));
    double s = 0.0;
    for (int j = 0; j < kPhi; ++j) s += hol_sectional(r, chart_point(t, 2.0 * M_PI * j / kPhi));
    return s / kPhi;
  };
  return 0.5 * boost::math::quadrature::gauss<double, 7>::integrate(ring_mean, -1.0, 1.0);
}

// --- unitary frames -----------------------------------------------------------------

Mat2c unitary_frame(const Vec2c& v) {
  Mat2c u;
  u << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  return u;
}

KahlerCurv2 conjugate_kahler(const KahlerCurv2& r, const Mat2c& u) {
  const double dev = (u.adjoint() * u - Mat2c::Identity()).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream msg;
    msg << "frame is not unitary (deviation " << dev << ")";
    throw InvariantViolation(msg.str());
  }
  KArray out{};
  for_each_index([&](int a, int b, int c, int d) {
    cplx s = 0.0;
    for_each_index([&](int p, int q, int rr, int t) {
      s += u(p, a) * std::conj(u(q, b)) * u(rr, c) * std::conj(u(t, d)) * r(p, q, rr, t);
    });
    out[idx_k(a, b, c, d)] = s;
  });
  return kahler_symmetrize(out);
}

Mat2c random_unitary(std::uint64_t seed) {
  SampleStream s(seed);
  Mat2c z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double re = s.normal();
      z(i, j) = cplx(re, s.normal());
    }
  Eigen::HouseholderQR<Mat2c> qr(z);
  Mat2c q = qr.householderQ();
  const Mat2c rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) {
    const double m = std::abs(rr(k, k));
    if (m > 0.0) q.col(k) *= rr(k, k) / m;
  }
  return q;
}

double critical_frame_check(const KahlerCurv2& r, const Vec2c& v) {
  const KahlerCurv2 rf = conjugate_kahler(r, unitary_frame(v / v.norm()));
  double worst = 0.0;
  for_each_index([&](int a, int b, int c, int d) {
    const int ones = a + b + c + d;
    if (ones == 1 || ones == 3) worst = std::max(worst, std::abs(rf(a, b, c, d)));
  });
  return worst;
}

// --- Siu-Yang -----------------------------------------------------------------------

std::string_view to_string(Orientation o) noexcept {
  return o == Orientation::min_frame ? "min_frame" : "max_frame";
}

std::string_view to_string(KahlerSign s) noexcept {
  switch (s) {
    case KahlerSign::negative:
      return "negative";
    case KahlerSign::positive:
      return "positive";
    case KahlerSign::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

SiuYangCertificate siu_yang_at(const KahlerCurv2& r, const Vec2c& v_in, Orientation orientation,
                               const HolExtremaReport& extrema) {
  const double scale = std::max(1.0, r.max_abs());
  const Vec2c v = v_in / v_in.norm();
  SiuYangCertificate c;
  c.orientation = orientation;
  c.extrema = extrema;
  c.h_min = extrema.h_min;
  c.h_max = extrema.h_max;

  c.frame_residual = critical_frame_check(r, v);
  if (c.frame_residual > 1e-7 * scale) {
    std::ostringstream msg;
    msg << "direction is not critical for H (residual " << c.frame_residual << ")";
    throw FrameNotCritical(msg.str());
  }

  const KahlerCurv2 rf = conjugate_kahler(r, unitary_frame(v));
  c.r1111 = rf(0, 0, 0, 0).real();
  c.r1122 = rf(0, 0, 1, 1).real();
  c.a_value = 2.0 * c.r1122 - c.r1111;
  c.b_modulus = std::abs(rf(0, 1, 0, 1));
  c.laplacian_value = -c.a_value * c.r1122 + c.b_modulus * c.b_modulus;

  if (orientation == Orientation::min_frame) {
    c.laplacian_closed_form = -3.0 * c.h_min * c.h_min + std::pow(2.0 * c.h_max + c.h_min, 2);
    c.sign_conclusion = c.laplacian_value < 0.0 ? KahlerSign::negative : KahlerSign::inconclusive;
  } else {
    c.laplacian_closed_form = -3.0 * c.h_max * c.h_max + std::pow(2.0 * c.h_min + c.h_max, 2);
    c.sign_conclusion = c.laplacian_value > 0.0 ? KahlerSign::positive : KahlerSign::inconclusive;
  }
  return c;
}

SiuYangCertificate siu_yang_laplacian(const KahlerCurv2& r, Orientation orientation, double tol) {
  const double scale = std::max(1.0, r.max_abs());
  const KahlerEinstein e = kahler_einstein(r);
  if (e.residual > tol * scale || std::abs(e.lambda) > tol * scale) {
    std::ostringstream msg;
    msg << "Siu-Yang formula needs a Ricci-flat tensor (lambda = " << e.lambda << ", deviation "
        << e.residual << ")";
    throw InvariantViolation(msg.str());
  }
  const HolExtremaReport ext = extremize_hol(r, tol);
  return siu_yang_at(r, orientation == Orientation::min_frame ? ext.dir_min : ext.dir_max, orientation, ext);
}

// --- pinching -----------------------------------------------------------------------

double KahlerPinchingSlacks::worst() const noexcept {
  double w = std::min({ke_quadrature[0], ke_quadrature[1], ke_identity[0], ke_identity[1]});
  if (ricci_flat) w = std::min({w, ke2[0], ke2[1]});
  return w;
}

KahlerPinchingSlacks kahler_pinching_bounds(const HolExtremaReport& rep, double flat_tol) {
  if (!rep.einstein) throw InvariantViolation("pinching bounds need an Einstein tensor");
  const double spread = rep.h_max - rep.h_min;
  auto ke = [&](double hav) {
    return std::array<double, 2>{(hav - rep.h_min) - spread / 3.0, 2.0 * spread / 3.0 - (hav - rep.h_min)};
  };
  KahlerPinchingSlacks s;
  s.ke_quadrature = ke(rep.h_av);
  s.ke_identity = ke(2.0 * rep.lambda / 3.0);
  s.ricci_flat = std::abs(rep.lambda) <= flat_tol * std::max({1.0, std::abs(rep.h_max), std::abs(rep.h_min)});
  if (s.ricci_flat) s.ke2 = {rep.h_max + 0.5 * rep.h_min, -2.0 * rep.h_min - rep.h_max};
  return s;
}

KahlerThresholds kahler_thresholds() noexcept {
  const double r3 = std::sqrt(3.0);
  return {(1.0 + r3) / 2.0, r3 - 1.0};
}

// --- constructors and samplers ------------------------------------------------------

KahlerCurv2 family_f(double b) { return kahler_symmetrize(fill_orbits(-1.0, -1.0, 1.0, b, 0.0, 0.0)); }

KahlerCurv2 sample_ricci_flat_kahler(std::uint64_t seed, double scale) {
  return sample_einstein_kahler(seed, 0.0, scale);
}

KahlerCurv2 sample_einstein_kahler(std::uint64_t seed, double lambda, double scale) {
  SampleStream s(seed);
  const double p = s.uniform(-scale, scale);
  const double b_re = s.uniform(-scale, scale);
  const double b_im = s.uniform(-scale, scale);
  const double w_re = s.uniform(-scale, scale);
  const double w_im = s.uniform(-scale, scale);
  // Ric(1,1) = R1111 + R1122, Ric(2,2) = R1122 + R2222, Ric(1,2) = R1112 + R1222.
  const cplx w(w_re, w_im);
  return kahler_symmetrize(fill_orbits(p, p, lambda - p, cplx(b_re, b_im), w, -w));
}

}  // namespace rfgap
