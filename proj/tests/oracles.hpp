#pragma once

// Reference computations written directly from the definitions, sharing no
// code with the library beyond its value types.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "rfgap/curvature.hpp"
#include "rfgap/kahler.hpp"

namespace oracle {

using rfgap::idx4;
using rfgap::Tensor4;

inline double at(const Tensor4& t, int i, int j, int k, int l) { return t[idx4(i, j, k, l)]; }

// B(i,j,k,l) = sum_{p,q} R(i,p,j,q) R(k,p,l,q), as a trace of 4x4 slices.
inline Tensor4 b_tensor(const rfgap::Riemann4& r) {
  std::array<Eigen::Matrix4d, 16> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) m[i * 4 + j](p, q) = r(i, p, j, q);
  Tensor4 b{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) b[idx4(i, j, k, l)] = (m[i * 4 + j].array() * m[k * 4 + l].array()).sum();
  return b;
}

inline Tensor4 q_tensor(const rfgap::Riemann4& r) {
  const Tensor4 b = oracle::b_tensor(r);
  Tensor4 q{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          q[idx4(i, j, k, l)] = 2.0 * (at(b, i, j, k, l) - at(b, i, j, l, k) + at(b, i, k, j, l) - at(b, i, l, j, k));
  return q;
}

// e_a ^ e_b as an antisymmetric matrix.
inline Eigen::Matrix4d wedge_matrix(int a, int b) {
  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  w(a, b) = 1.0;
  w(b, a) = -1.0;
  return w;
}

// Basis (01, 02, 03, 23, 31, 12) as matrices.
inline std::array<Eigen::Matrix4d, 6> bivector_basis() {
  return {wedge_matrix(0, 1), wedge_matrix(0, 2), wedge_matrix(0, 3),
          wedge_matrix(2, 3), wedge_matrix(3, 1), wedge_matrix(1, 2)};
}

// R_ijkl = sum_AB op_AB (w_A)_ij (w_B)_kl.
inline Tensor4 tensor_from_operator(const Eigen::Matrix<double, 6, 6>& op) {
  const auto w = bivector_basis();
  Tensor4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = 0.0;
          for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) s += op(a, b) * w[a](i, j) * w[b](k, l);
          t[idx4(i, j, k, l)] = s;
        }
  return t;
}

// diag(W+, W-) in the basis w_k^(+-) = (f_k +- g_k) / sqrt 2, rewritten in the
// standard basis.
inline Tensor4 tensor_from_weyl(const rfgap::WeylBlocks& w) {
  Eigen::Matrix<double, 6, 6> s = Eigen::Matrix<double, 6, 6>::Zero();
  const double h = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < 3; ++k) {
    s(k, k) = h;
    s(3 + k, k) = h;
    s(k, 3 + k) = h;
    s(3 + k, 3 + k) = -h;
  }
  Eigen::Matrix<double, 6, 6> d = Eigen::Matrix<double, 6, 6>::Zero();
  d.topLeftCorner<3, 3>() = w.w_plus;
  d.bottomRightCorner<3, 3>() = w.w_minus;
  return tensor_from_operator(s * d * s.transpose());
}

inline double sectional(const Tensor4& t, const Eigen::Vector4d& u, const Eigen::Vector4d& v) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += at(t, i, j, k, l) * u(i) * v(j) * u(k) * v(l);
  return s;
}

inline double max_diff(const Tensor4& a, const Tensor4& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

// --- parallelograms {|a.p| <= c1, |b.p| <= c2} ---------------------------------

struct Extrema {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

struct Parallelogram {
  Eigen::Vector2d a, b;
  double c1 = 0.0, c2 = 0.0;

  [[nodiscard]] Eigen::Vector2d corner(double s1, double s2) const {
    Eigen::Matrix2d m;
    m.row(0) = a.transpose();
    m.row(1) = b.transpose();
    return m.fullPivLu().solve(Eigen::Vector2d(s1 * c1, s2 * c2));
  }

  // Corners in cyclic order.
  [[nodiscard]] std::array<Eigen::Vector2d, 4> corners() const {
    return {corner(1, 1), corner(1, -1), corner(-1, -1), corner(-1, 1)};
  }
};

// x = R0123 (or y), z = R0231.
inline Parallelogram min_region(double delta) {
  return {Eigen::Vector2d(1, -1), Eigen::Vector2d(1, 2), 2.0 - delta, 2.0 * delta - 1.0};
}

inline Parallelogram remark_region(double delta) {
  return {Eigen::Vector2d(1, 2), Eigen::Vector2d(-1, 1), 2.0 - delta, 2.0 * delta - 1.0};
}

inline double q(const Eigen::Vector2d& p) { return p(0) * p(0) + p(1) * p(1) + 4.0 * p(0) * p(1); }

// q has an indefinite Hessian, so its extrema over the region sit on the
// boundary; each edge is a one-variable quadratic.
inline Extrema exact_extrema(const Parallelogram& d) {
  const auto c = d.corners();
  Extrema e;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector2d p0 = c[k];
    const Eigen::Vector2d dir = c[(k + 1) % 4] - p0;
    auto f = [&](double t) { return q(p0 + t * dir); };
    std::array<double, 3> ts{0.0, 1.0, 0.0};
    const double qa = q(dir);  // leading coefficient
    int n = 2;
    if (std::abs(qa) > 1e-300) {
      const Eigen::Matrix2d h = (Eigen::Matrix2d() << 2, 4, 4, 2).finished();
      const double slope0 = (h * p0).dot(dir);
      const double t = -slope0 / (2.0 * qa);
      if (t > 0.0 && t < 1.0) ts[n++] = t;
    }
    for (int i = 0; i < n; ++i) {
      e.min = std::min(e.min, f(ts[i]));
      e.max = std::max(e.max, f(ts[i]));
    }
  }
  return e;
}

// Grid in the region's own affine coordinates (u, v) in [-1, 1]^2.
inline Extrema affine_grid(const Parallelogram& d, int n) {
  const Eigen::Vector2d o = Eigen::Vector2d::Zero();
  const Eigen::Vector2d eu = 0.5 * (d.corner(1, 1) + d.corner(1, -1)) - o;
  const Eigen::Vector2d ev = 0.5 * (d.corner(1, 1) + d.corner(-1, 1)) - o;
  Extrema e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = -1.0 + 2.0 * i / (n - 1);
      const double v = -1.0 + 2.0 * j / (n - 1);
      const double val = q(u * eu + v * ev);
      e.min = std::min(e.min, val);
      e.max = std::max(e.max, val);
    }
  return e;
}

// --- Kahler --------------------------------------------------------------------

using cplx = std::complex<double>;

inline double hol(const rfgap::KahlerCurv2& r, const Eigen::Vector2cd& v) {
  cplx h = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) h += r(a, b, c, d) * v(a) * std::conj(v(b)) * v(c) * std::conj(v(d));
  return h.real();
}

// Unitary-invariant moments on the unit sphere of C^2:
//   E[v_a conj(v_b) v_c conj(v_d)] = (d_ab d_cd + d_ad d_cb) / 6.
inline double hol_average(const rfgap::KahlerCurv2& r) {
  cplx s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) s += r(a, a, c, c) + r(a, c, c, a);
  return s.real() / 6.0;
}

}  // namespace oracle
