#include "rfgap/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rfgap/sphere_search.hpp"

namespace rfgap {

std::string_view to_string(ExtremaMethod m) noexcept {
  switch (m) {
    case ExtremaMethod::eigen_oracle:
      return "eigen_oracle";
    case ExtremaMethod::numeric_search:
      return "numeric_search";
  }
  return "unknown";
}

Plane2 plane_from_pair(const Vec3& alpha, const Vec3& beta) {
  Vec6 pm;
  pm << alpha, beta;
  const Vec6 omega = self_dual_basis() * pm / std::sqrt(2.0);
  return Plane2::from_bivector(omega);
}

namespace {

// Eigenvectors are only defined up to sign; make the first clearly nonzero
// coordinate positive so reports are reproducible.
Vec3 canonical_sign(Vec3 v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  return v;
}

struct BlockSpectrum {
  Vec3 values;  // ascending
  Mat3 vectors;
};

BlockSpectrum spectrum(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (m + m.transpose()));
  BlockSpectrum s{es.eigenvalues(), es.eigenvectors()};
  for (int c = 0; c < 3; ++c) s.vectors.col(c) = canonical_sign(s.vectors.col(c));
  return s;
}

}  // namespace

ExtremaReport extremize_sectional_eigen(const Riemann4& r, double einstein_tol) {
  const SelfDualSplit split = split_self_dual(r);
  if (split.cross_block > einstein_tol * std::max(1.0, r.max_abs())) {
    std::ostringstream msg;
    msg << "eigenvalue oracle needs an Einstein tensor (cross block " << split.cross_block << ")";
    throw InvariantViolation(msg.str());
  }
  const BlockSpectrum p = spectrum(split.plus);
  const BlockSpectrum n = spectrum(split.minus);
  ExtremaReport e;
  e.k_max = 0.5 * (p.values(2) + n.values(2));
  e.k_min = 0.5 * (p.values(0) + n.values(0));
  e.plane_max = plane_from_pair(p.vectors.col(2), n.vectors.col(2));
  e.plane_min = plane_from_pair(p.vectors.col(0), n.vectors.col(0));
  e.method = ExtremaMethod::eigen_oracle;
  return e;
}

ExtremaReport extremize_sectional_numeric(const Riemann4& r) {
  SphereQuadratic<2> f;
  f.quad = 0.5 * curvature_operator_pm(r);
  f.quad = 0.5 * (f.quad + f.quad.transpose()).eval();

  static const std::vector<SphereQuadratic<2>::Vec> starts = [] {
    constexpr int n = 32;
    const auto a = fibonacci_sphere(n, 0.0);
    const auto b = fibonacci_sphere(n, 1.0);
    std::vector<SphereQuadratic<2>::Vec> s;
    for (int i = 0; i < n; ++i) {
      SphereQuadratic<2>::Vec x;
      x << a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>((i * 11) % n)];
      s.push_back(x);
    }
    return s;
  }();

  const auto hi = maximize_on_spheres<2>(f, starts);
  const auto lo = minimize_on_spheres<2>(f, starts);
  if (!hi.converged || !lo.converged) {
    std::ostringstream msg;
    msg << "sectional curvature search stalled (gradient norms " << hi.gradient_norm << ", "
        << lo.gradient_norm << ")";
    throw NonConvergence(msg.str());
  }
  ExtremaReport e;
  e.k_max = hi.value;
  e.k_min = lo.value;
  e.plane_max = plane_from_pair(hi.point.head<3>(), hi.point.tail<3>());
  e.plane_min = plane_from_pair(lo.point.head<3>(), lo.point.tail<3>());
  e.method = ExtremaMethod::numeric_search;
  return e;
}

ExtremaReport extremize_sectional(const Riemann4& r, double einstein_tol) {
  if (split_self_dual(r).cross_block <= einstein_tol * std::max(1.0, r.max_abs())) {
    return extremize_sectional_eigen(r, einstein_tol);
  }
  return extremize_sectional_numeric(r);
}

double max_offdiag_residual(const Riemann4& r) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        if (j != i && k != i && j != k) m = std::max(m, std::abs(r(i, j, i, k)));
  return m;
}

// --- Berger frame -----------------------------------------------------------------

namespace {

constexpr int kResiduals = 25;
using ResidualVec = Eigen::Matrix<double, kResiduals, 1>;

Mat4 torus_rotation(double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  Mat4 g = Mat4::Zero();
  // Columns: e0 = c u + s v, e1 = -s u + c v, likewise for (e2, e3).
  g(0, 0) = ct;
  g(1, 0) = st;
  g(0, 1) = -st;
  g(1, 1) = ct;
  g(2, 2) = cp;
  g(3, 2) = sp;
  g(2, 3) = -sp;
  g(3, 3) = cp;
  return g;
}

// The 24 components R(i,j,i,k) plus the gap between the smaller of K02, K03
// and k_min. Both vanish exactly at a Berger frame.
ResidualVec torus_residuals(const Riemann4& base, double k_min, double theta, double phi) {
  const Riemann4 t = conjugate(base, Frame4(torus_rotation(theta, phi), 1e-9));
  ResidualVec res;
  int n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        if (j != i && k != i && j != k) res(n++) = t(i, j, i, k);
  res(n) = std::min(t(0, 2, 0, 2), t(0, 3, 0, 3)) - k_min;
  return res;
}

struct TorusPoint {
  double theta = 0.0;
  double phi = 0.0;
  double cost = 0.0;
};

// Levenberg-Marquardt on the two torus angles with a central-difference
// Jacobian.
TorusPoint refine(const Riemann4& base, double k_min, TorusPoint p) {
  constexpr double h = 1e-6;
  double damping = 1e-3;
  ResidualVec res = torus_residuals(base, k_min, p.theta, p.phi);
  p.cost = res.squaredNorm();
  for (int it = 0; it < 100 && p.cost > 0.0; ++it) {
    Eigen::Matrix<double, kResiduals, 2> jac;
    jac.col(0) = (torus_residuals(base, k_min, p.theta + h, p.phi) -
                  torus_residuals(base, k_min, p.theta - h, p.phi)) /
                 (2.0 * h);
    jac.col(1) = (torus_residuals(base, k_min, p.theta, p.phi + h) -
                  torus_residuals(base, k_min, p.theta, p.phi - h)) /
                 (2.0 * h);
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d jtr = jac.transpose() * res;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::Matrix2d a = jtj;
      a(0, 0) += damping * std::max(jtj(0, 0), 1e-30);
      a(1, 1) += damping * std::max(jtj(1, 1), 1e-30);
      const Eigen::Vector2d step = -a.ldlt().solve(jtr);
      if (!step.allFinite()) break;
      const ResidualVec trial = torus_residuals(base, k_min, p.theta + step(0), p.phi + step(1));
      const double cost = trial.squaredNorm();
      if (cost < p.cost) {
        p.theta += step(0);
        p.phi += step(1);
        res = trial;
        const double drop = p.cost - cost;
        p.cost = cost;
        damping = std::max(damping / 3.0, 1e-12);
        improved = true;
        if (drop <= 1e-32 || step.norm() < 1e-15) it = 100;
        break;
      }
      damping *= 4.0;
    }
    if (!improved) break;
  }
  return p;
}

}  // namespace

BergerReport berger_frame(const Riemann4& r, const ExtremaReport& e, const BergerOptions& options) {
  const Plane2 comp = e.plane_max.complement();
  Mat4 base_frame;
  base_frame << e.plane_max.u(), e.plane_max.v(), comp.u(), comp.v();
  const Riemann4 base = conjugate(r, Frame4(base_frame, 1e-9));

  // Seed from the local minima of the cost on a periodic grid over [0, pi)^2.
  const int n = std::max(options.grid, 4);
  const double step = M_PI / n;
  std::vector<double> cost(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      cost[static_cast<std::size_t>(a * n + b)] =
          torus_residuals(base, e.k_min, a * step, b * step).squaredNorm();
  auto at = [&](int a, int b) {
    return cost[static_cast<std::size_t>(((a + n) % n) * n + (b + n) % n)];
  };
  std::vector<TorusPoint> seeds;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double c = at(a, b);
      bool is_min = true;
      for (int da = -1; da <= 1 && is_min; ++da)
        for (int db = -1; db <= 1; ++db)
          if ((da != 0 || db != 0) && at(a + da, b + db) < c) {
            is_min = false;
            break;
          }
      if (is_min) seeds.push_back({a * step, b * step, c});
    }
  std::stable_sort(seeds.begin(), seeds.end(),
                   [](const TorusPoint& p, const TorusPoint& q) { return p.cost < q.cost; });
  if (seeds.size() > 6) seeds.resize(6);

  TorusPoint best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (const TorusPoint& s : seeds) {
    const TorusPoint p = refine(base, e.k_min, s);
    if (p.cost < best.cost) best = p;
  }

  Mat4 frame = base_frame * torus_rotation(best.theta, best.phi);
  Riemann4 t = conjugate(r, Frame4(frame, 1e-9));
  if (t(0, 2, 0, 2) < t(0, 3, 0, 3)) {
    // Swap e2 and e3 so that K03 is the smaller one; negate to keep orientation.
    const Vec4 e2 = frame.col(2);
    frame.col(2) = frame.col(3);
    frame.col(3) = -e2;
    t = conjugate(r, Frame4(frame, 1e-9));
  }
  // A single reflection flips x, y and z together and nothing else we report.
  const double tiny = 1e-14 * std::max(1.0, r.max_abs());
  if (t(0, 1, 2, 3) < -tiny || (std::abs(t(0, 1, 2, 3)) <= tiny && t(0, 2, 3, 1) < -tiny)) {
    frame.col(3) = -frame.col(3);
    t = conjugate(r, Frame4(frame, 1e-9));
  }

  BergerReport rep;
  rep.frame = Frame4(frame, 1e-9);
  rep.k01 = t(0, 1, 0, 1);
  rep.k02 = t(0, 2, 0, 2);
  rep.k03 = t(0, 3, 0, 3);
  rep.x = t(0, 1, 2, 3);
  rep.y = t(0, 3, 1, 2);
  rep.z = t(0, 2, 3, 1);
  rep.residual_offdiag = max_offdiag_residual(t);
  rep.residual_ineq = {(rep.k01 - rep.k02) - std::abs(rep.x - rep.z),
                       (rep.k02 - rep.k03) - std::abs(rep.z - rep.y)};
  rep.residual_kmin = std::abs(rep.k03 - e.k_min);
  rep.in_frame = t;

  const double tol = options.tolerance * std::max(1.0, r.max_abs());
  if (rep.residual_offdiag > tol || rep.residual_kmin > tol) {
    std::ostringstream msg;
    msg << "Berger frame residual above tolerance: max |R_ijik| = " << rep.residual_offdiag
        << ", |K03 - K_min| = " << rep.residual_kmin << " (tolerance " << tol << ")";
    throw BergerToleranceExceeded(msg.str(), rep);
  }
  return rep;
}

CorollarySlacks corollary_bounds_check(const ExtremaReport& e) {
  return {e.k_max + 0.5 * e.k_min, -2.0 * e.k_min - e.k_max};
}

}  // namespace rfgap
