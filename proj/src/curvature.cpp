#include "rfgap/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rfgap/errors.hpp"
#include "rfgap/rng.hpp"

namespace rfgap {

namespace {

double max_abs_of(const Tensor4& t) {
  double m = 0.0;
  for (double x : t) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double SampleStream::normal() {
  // 1 - unit() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - unit();
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double InvariantAudit::worst() const noexcept {
  return std::max({antisymmetry, pair_symmetry, bianchi});
}

InvariantAudit audit_invariants(const Tensor4& t) {
  InvariantAudit a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double r = t[idx4(i, j, k, l)];
          a.antisymmetry = std::max({a.antisymmetry, std::abs(r + t[idx4(j, i, k, l)]),
                                     std::abs(r + t[idx4(i, j, l, k)])});
          a.pair_symmetry = std::max(a.pair_symmetry, std::abs(r - t[idx4(k, l, i, j)]));
          a.bianchi = std::max(a.bianchi,
                               std::abs(r + t[idx4(i, k, l, j)] + t[idx4(i, l, j, k)]));
        }
  return a;
}

// --- Riemann4 ---------------------------------------------------------------

Riemann4 Riemann4::validated(const Tensor4& components, double tol) {
  const InvariantAudit a = audit_invariants(components);
  const double bound = tol * std::max(1.0, max_abs_of(components));
  if (a.worst() > bound) {
    std::ostringstream msg;
    msg << "not an algebraic curvature tensor: antisymmetry residual " << a.antisymmetry
        << ", pair-symmetry residual " << a.pair_symmetry << ", Bianchi residual " << a.bianchi
        << " (tolerance " << bound << ")";
    throw InvariantViolation(msg.str());
  }
  return Riemann4(components);
}

double Riemann4::max_abs() const noexcept { return max_abs_of(c_); }

Riemann4 Riemann4::scaled(double t) const noexcept {
  Riemann4 out(*this);
  for (double& x : out.c_) x *= t;
  return out;
}

Riemann4 Riemann4::plus(const Riemann4& other) const noexcept {
  Riemann4 out(*this);
  for (std::size_t n = 0; n < out.c_.size(); ++n) out.c_[n] += other.c_[n];
  return out;
}

// --- Plane2 / Frame4 ----------------------------------------------------------

Plane2::Plane2(const Vec4& u, const Vec4& v) : u_(u), v_(v) {
  constexpr double tol = 1e-12;
  if (std::abs(u.norm() - 1.0) > tol || std::abs(v.norm() - 1.0) > tol ||
      std::abs(u.dot(v)) > tol) {
    throw InvariantViolation("Plane2 requires an orthonormal pair");
  }
}

Plane2 Plane2::spanned_by(const Vec4& a, const Vec4& b) {
  const double na = a.norm();
  if (!(na > 0.0)) throw InvariantViolation("Plane2::spanned_by: zero vector");
  const Vec4 u = a / na;
  Vec4 w = b - u.dot(b) * u;
  w -= u.dot(w) * u;  // second pass keeps <u,v> at rounding level
  const double nw = w.norm();
  if (!(nw > 1e-14 * std::max(1.0, b.norm()))) {
    throw InvariantViolation("Plane2::spanned_by: vectors are linearly dependent");
  }
  return Plane2(u, w / nw);
}

Plane2 Plane2::from_bivector(const Vec6& omega) {
  const double n = omega.norm();
  if (!(n > 0.0)) throw InvariantViolation("Plane2::from_bivector: zero bivector");
  const Vec6 w = omega / n;
  // Plucker relation: w ^ w = 0 for decomposable bivectors.
  const double pl = w(0) * w(3) + w(1) * w(4) + w(2) * w(5);
  if (std::abs(pl) > 1e-8) {
    throw InvariantViolation("Plane2::from_bivector: bivector is not decomposable");
  }
  Mat4 om = Mat4::Zero();
  for (int a = 0; a < 6; ++a) {
    const auto [i, j] = kBivectorPairs[static_cast<std::size_t>(a)];
    om(i, j) = w(a);
    om(j, i) = -w(a);
  }
  // om = u v^T - v u^T; its column space is the plane, and for a in the plane
  // (a, -om a) is a positively oriented orthogonal pair.
  int best = 0;
  for (int c = 1; c < 4; ++c)
    if (om.col(c).norm() > om.col(best).norm()) best = c;
  const Vec4 a = om.col(best).normalized();
  const Vec4 b = -(om * a);
  return spanned_by(a, b);
}

Vec6 Plane2::bivector() const noexcept {
  Vec6 w;
  for (int a = 0; a < 6; ++a) {
    const auto [i, j] = kBivectorPairs[static_cast<std::size_t>(a)];
    w(a) = u_(i) * v_(j) - u_(j) * v_(i);
  }
  return w;
}

Plane2 Plane2::complement() const {
  Eigen::Matrix<double, 4, 2> pair;
  pair.col(0) = u_;
  pair.col(1) = v_;
  const Mat4 q = Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>>(pair).householderQ();
  Vec4 p = q.col(2);
  Vec4 r = q.col(3);
  Mat4 full;
  full << u_, v_, p, r;
  if (full.determinant() < 0.0) r = -r;
  return spanned_by(p, r);
}

Frame4::Frame4(const Mat4& basis, double tol) : basis_(basis) {
  const double err = (basis.transpose() * basis - Mat4::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    std::ostringstream msg;
    msg << "frame is not orthonormal (max |F^T F - I| = " << err << ")";
    throw InvariantViolation(msg.str());
  }
}

// --- contractions ---------------------------------------------------------------

Riemann4 symmetrize(const Tensor4& raw) {
  Tensor4 s{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          s[idx4(i, j, k, l)] =
              (raw[idx4(i, j, k, l)] - raw[idx4(j, i, k, l)] - raw[idx4(i, j, l, k)] +
               raw[idx4(j, i, l, k)] + raw[idx4(k, l, i, j)] - raw[idx4(l, k, i, j)] -
               raw[idx4(k, l, j, i)] + raw[idx4(l, k, j, i)]) /
              8.0;
        }
  // Remove the totally antisymmetric part; on tensors with the pair
  // symmetries it equals one third of the Bianchi sum.
  // One representative per orbit, copied with exact signs so the index
  // symmetries hold bit for bit.
  Tensor4 out{};
  for (std::size_t p = 0; p < kBivectorPairs.size(); ++p)
    for (std::size_t q = p; q < kBivectorPairs.size(); ++q) {
      const auto [i, j] = kBivectorPairs[p];
      const auto [k, l] = kBivectorPairs[q];
      const double alt = (s[idx4(i, j, k, l)] + s[idx4(i, k, l, j)] + s[idx4(i, l, j, k)]) / 3.0;
      const double v = s[idx4(i, j, k, l)] - alt;
      out[idx4(i, j, k, l)] = v;
      out[idx4(j, i, k, l)] = -v;
      out[idx4(i, j, l, k)] = -v;
      out[idx4(j, i, l, k)] = v;
      out[idx4(k, l, i, j)] = v;
      out[idx4(l, k, i, j)] = -v;
      out[idx4(k, l, j, i)] = -v;
      out[idx4(l, k, j, i)] = v;
    }
  return Riemann4(out);
}

Mat4 ricci(const Riemann4& r) {
  Mat4 ric = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int p = 0; p < 4; ++p) ric(i, j) += r(i, p, j, p);
  return ric;
}

std::optional<EinsteinData> einstein_data(const Riemann4& r, double tol) {
  const Mat4 ric = ricci(r);
  const double lambda = ric.trace() / 4.0;
  const double err = (ric - lambda * Mat4::Identity()).cwiseAbs().maxCoeff();
  if (err > tol * std::max(1.0, r.max_abs())) return std::nullopt;
  return EinsteinData{lambda};
}

double sectional(const Riemann4& r, const Plane2& p) {
  const Vec4& u = p.u();
  const Vec4& v = p.v();
  double k = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) k += r(i, j, a, b) * u(i) * v(j) * u(a) * v(b);
  return k;
}

Tensor4 b_tensor(const Riemann4& r) {
  // slices[i][j](p,q) = R(i,p,j,q); B_ijkl is the Frobenius product of two slices.
  std::array<std::array<Mat4, 4>, 4> slices;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) slices[i][j](p, q) = r(i, p, j, q);
  Tensor4 b{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          b[idx4(i, j, k, l)] = slices[i][j].cwiseProduct(slices[k][l]).sum();
  return b;
}

Tensor4 q_tensor(const Riemann4& r) {
  const Tensor4 b = b_tensor(r);
  Tensor4 q{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          q[idx4(i, j, k, l)] = 2.0 * (b[idx4(i, j, k, l)] - b[idx4(i, j, l, k)] +
                                       b[idx4(i, k, j, l)] - b[idx4(i, l, j, k)]);
  return q;
}

// --- bivectors ------------------------------------------------------------------

Mat6 curvature_operator(const Riemann4& r) {
  Mat6 m;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const auto [i, j] = kBivectorPairs[static_cast<std::size_t>(a)];
      const auto [k, l] = kBivectorPairs[static_cast<std::size_t>(b)];
      m(a, b) = r(i, j, k, l);
    }
  return m;
}

Riemann4 from_curvature_operator(const Mat6& op) {
  Tensor4 t{};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const auto [i, j] = kBivectorPairs[static_cast<std::size_t>(a)];
      const auto [k, l] = kBivectorPairs[static_cast<std::size_t>(b)];
      const double v = op(a, b);
      t[idx4(i, j, k, l)] = v;
      t[idx4(j, i, k, l)] = -v;
      t[idx4(i, j, l, k)] = -v;
      t[idx4(j, i, l, k)] = v;
    }
  return Riemann4(t);
}

const Mat6& self_dual_basis() {
  static const Mat6 basis = [] {
    const double h = 1.0 / std::sqrt(2.0);
    Mat6 t = Mat6::Zero();
    for (int k = 0; k < 3; ++k) {
      t(k, k) = h;
      t(k + 3, k) = h;
      t(k, k + 3) = h;
      t(k + 3, k + 3) = -h;
    }
    return t;
  }();
  return basis;
}

Mat6 curvature_operator_pm(const Riemann4& r) {
  const Mat6& t = self_dual_basis();
  return t.transpose() * curvature_operator(r) * t;
}

SelfDualSplit split_self_dual(const Riemann4& r) {
  const Mat6 m = curvature_operator_pm(r);
  SelfDualSplit s;
  s.plus = m.topLeftCorner<3, 3>();
  s.minus = m.bottomRightCorner<3, 3>();
  s.cross_block = m.topRightCorner<3, 3>().cwiseAbs().maxCoeff();
  return s;
}

WeylBlocks weyl_blocks(const Riemann4& r, double tol) {
  const double ric = ricci(r).cwiseAbs().maxCoeff();
  if (ric > tol * std::max(1.0, r.max_abs())) {
    std::ostringstream msg;
    msg << "tensor is not Ricci-flat (max |Ric| = " << ric << ")";
    throw InvariantViolation(msg.str());
  }
  const SelfDualSplit s = split_self_dual(r);
  // Symmetrize away rounding from the basis change.
  return WeylBlocks{0.5 * (s.plus + s.plus.transpose()), 0.5 * (s.minus + s.minus.transpose())};
}

Riemann4 to_riemann(const WeylBlocks& w) {
  constexpr double tol = 1e-10;
  for (const Mat3* block : {&w.w_plus, &w.w_minus}) {
    const double scale = std::max(1.0, block->cwiseAbs().maxCoeff());
    if ((*block - block->transpose()).cwiseAbs().maxCoeff() > tol * scale) {
      throw InvariantViolation("Weyl block is not symmetric");
    }
    if (std::abs(block->trace()) > tol * scale) {
      std::ostringstream msg;
      msg << "Weyl block is not trace-free (trace " << block->trace() << ")";
      throw InvariantViolation(msg.str());
    }
  }
  // In the (f, g) basis the operator is [[A, B], [B, A]] with
  // A = (W+ + W-)/2 and B = (W+ - W-)/2.
  const Mat3 a = 0.5 * (w.w_plus + w.w_minus);
  const Mat3 b = 0.5 * (w.w_plus - w.w_minus);
  Mat6 op;
  op << a, b, b, a;
  return from_curvature_operator(op);
}

Riemann4 conjugate(const Riemann4& r, const Frame4& f) {
  const Mat4& m = f.basis();
  Tensor4 cur = r.components();
  Tensor4 next{};
  // Transform one slot at a time: slot s of next = sum_p m(p, a) cur[.. p ..].
  for (int slot = 0; slot < 4; ++slot) {
    next.fill(0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            std::array<int, 4> ix{i, j, k, l};
            const int a = ix[static_cast<std::size_t>(slot)];
            double acc = 0.0;
            for (int p = 0; p < 4; ++p) {
              ix[static_cast<std::size_t>(slot)] = p;
              acc += m(p, a) * cur[idx4(ix[0], ix[1], ix[2], ix[3])];
            }
            next[idx4(i, j, k, l)] = acc;
          }
    cur = next;
  }
  return Riemann4(cur);
}

Riemann4 constant_curvature(double kappa) {
  Tensor4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          t[idx4(i, j, k, l)] = kappa * (static_cast<double>(i == k && j == l) -
                                         static_cast<double>(i == l && j == k));
  return Riemann4::validated(t);
}

Riemann4 diagonal_tensor(const std::array<double, 6>& k) {
  Mat6 op = Mat6::Zero();
  for (int a = 0; a < 6; ++a) op(a, a) = k[static_cast<std::size_t>(a)];
  return from_curvature_operator(op);
}

// --- sampling -------------------------------------------------------------------

WeylBlocks sample_ricci_flat(std::uint64_t seed, double scale) {
  SampleStream rng(seed);
  auto draw_block = [&] {
    Mat3 m;
    // Diagonal entries in [-3/4, 3/4] keep the trace-free projection in [-1, 1].
    for (int i = 0; i < 3; ++i) m(i, i) = rng.uniform(-0.75, 0.75) * scale;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        m(i, j) = rng.uniform(-1.0, 1.0) * scale;
        m(j, i) = m(i, j);
      }
    const double mean = m.trace() / 3.0;
    for (int i = 0; i < 3; ++i) m(i, i) -= mean;
    return m;
  };
  WeylBlocks w;
  w.w_plus = draw_block();
  w.w_minus = draw_block();
  return w;
}

Frame4 random_frame(std::uint64_t seed) {
  SampleStream rng(seed);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat4> qr(g);
  Mat4 q = qr.householderQ();
  const Mat4 rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < 4; ++c)
    if (rr(c, c) < 0.0) q.col(c) = -q.col(c);
  if (q.determinant() < 0.0) q.col(3) = -q.col(3);
  return Frame4(q, 1e-12);
}

Plane2 random_plane(std::uint64_t seed) {
  SampleStream rng(seed);
  Vec4 a;
  Vec4 b;
  for (int i = 0; i < 4; ++i) a(i) = rng.normal();
  for (int i = 0; i < 4; ++i) b(i) = rng.normal();
  return Plane2::spanned_by(a, b);
}

}  // namespace rfgap
