#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rfgap/curvature.hpp"
#include "rfgap/errors.hpp"
#include "rfgap/rng.hpp"

using namespace rfgap;

namespace {

Riemann4 weyl_example() {
  WeylBlocks w;
  w.w_plus = Vec3(1.5, -0.5, -1.0).asDiagonal();
  w.w_minus = Vec3(0.5, 0.5, -1.0).asDiagonal();
  return to_riemann(w);
}

// K01 = K23 = 1, K02 = K13 = -1/2, K03 = K12 = -1/2.
Riemann4 ricci_flat_diagonal() { return diagonal_tensor({1.0, -0.5, -0.5, 1.0, -0.5, -0.5}); }

Tensor4 random_raw(std::uint64_t seed) {
  SampleStream s(seed);
  Tensor4 t;
  for (double& x : t) x = s.uniform(-1.0, 1.0);
  return t;
}

Riemann4 random_riemann(std::uint64_t seed) { return symmetrize(random_raw(seed)); }

}  // namespace

TEST_CASE("symmetrize: zero, single entry, idempotence, fixed points") {
  const Riemann4 z = symmetrize(Tensor4{});
  CHECK(z.max_abs() == 0.0);

  Tensor4 one{};
  one[idx4(0, 1, 0, 1)] = 1.0;
  const Riemann4 r = symmetrize(one);
  // Direct audit of the invariant families, independent of audit_invariants.
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, i, k, l)));
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(i, j, l, k)));
          worst = std::max(worst, std::abs(r(i, j, k, l) - r(k, l, i, j)));
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
        }
  CHECK(worst < 1e-15);
  CHECK(r(0, 1, 0, 1) > 0.0);

  for (std::uint64_t s = 1; s <= 50; ++s) {
    const Riemann4 a = symmetrize(random_raw(s));
    const Riemann4 b = symmetrize(a.components());
    CHECK(oracle::max_diff(a.components(), b.components()) <= 1e-14);
    CHECK(audit_invariants(a.components()).worst() <= 1e-14);
  }

  const Riemann4 w = weyl_example();
  CHECK(oracle::max_diff(symmetrize(w.components()).components(), w.components()) <= 1e-14);
}

TEST_CASE("symmetrize is an orthogonal projection") {
  // <P a, b> = <a, P b> for a projection that is self-adjoint.
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Tensor4 a = random_raw(s), b = random_raw(s + 1000);
    const Tensor4 pa = symmetrize(a).components(), pb = symmetrize(b).components();
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t n = 0; n < 256; ++n) {
      lhs += pa[n] * b[n];
      rhs += a[n] * pb[n];
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("validated factory rejects broken tensors") {
  Tensor4 t = weyl_example().components();
  CHECK_NOTHROW((void)Riemann4::validated(t));
  t[idx4(0, 1, 2, 3)] += 1e-3;
  CHECK_THROWS_AS((void)Riemann4::validated(t), InvariantViolation);
}

TEST_CASE("ricci: zero, Weyl tensors, the diagonal example, constant curvature") {
  CHECK(ricci(Riemann4{}).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ricci(ricci_flat_diagonal()).cwiseAbs().maxCoeff() <= 1e-15);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Riemann4 r = to_riemann(sample_ricci_flat(stream_seed(5, i)));
    CHECK(ricci(r).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(audit_invariants(r.components()).bianchi <= 1e-12);
  }
  const Mat4 ric = ricci(constant_curvature(2.0));
  CHECK((ric - 6.0 * Mat4::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
  const auto e = einstein_data(constant_curvature(2.0));
  REQUIRE(e.has_value());
  CHECK(e->lambda == doctest::Approx(6.0));
  CHECK_FALSE(einstein_data(random_riemann(3)).has_value());
}

TEST_CASE("sectional: components, bivector form, basis independence") {
  CHECK(sectional(Riemann4{}, random_plane(1)) == 0.0);
  const Riemann4 d = ricci_flat_diagonal();
  CHECK(sectional(d, Plane2(Vec4::UnitX(), Vec4::UnitY())) == doctest::Approx(1.0));

  const double h = 1.0 / std::sqrt(2.0);
  const Plane2 p(Vec4(h, 0, h, 0), Vec4(0, h, 0, h));
  const Vec6 w = p.bivector();
  CHECK(sectional(d, p) == doctest::Approx(w.dot(curvature_operator(d) * w)).epsilon(1e-14));

  for (std::uint64_t s = 0; s < 50; ++s) {
    const Riemann4 r = random_riemann(s);
    const Plane2 pl = random_plane(s + 77);
    const double k = sectional(r, pl);
    CHECK(k == doctest::Approx(oracle::sectional(r.components(), pl.u(), pl.v())).epsilon(1e-12));
    // Another orthonormal basis of the same plane.
    const double t = 0.1 + 0.37 * static_cast<double>(s);
    const Vec4 u2 = std::cos(t) * pl.u() + std::sin(t) * pl.v();
    const Vec4 v2 = -std::sin(t) * pl.u() + std::cos(t) * pl.v();
    CHECK(std::abs(sectional(r, Plane2(u2, v2)) - k) <= 1e-12 * std::max(1.0, r.max_abs()));
  }
}

TEST_CASE("plane duality on Ricci-flat tensors") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Riemann4 r = to_riemann(sample_ricci_flat(stream_seed(9, i)));
    const Plane2 p = random_plane(stream_seed(10, i));
    CHECK(std::abs(sectional(r, p) - sectional(r, p.complement())) <= 1e-10);
  }
}

TEST_CASE("b_tensor and q_tensor against the slice-trace oracle") {
  CHECK(oracle::max_diff(b_tensor(Riemann4{}), Tensor4{}) == 0.0);
  CHECK(oracle::max_diff(q_tensor(Riemann4{}), Tensor4{}) == 0.0);
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Riemann4 r = s % 2 == 0 ? random_riemann(s) : to_riemann(sample_ricci_flat(s));
    const double scale = std::max(1.0, r.max_abs() * r.max_abs());
    CHECK(oracle::max_diff(b_tensor(r), oracle::b_tensor(r)) <= 1e-12 * scale);
    CHECK(oracle::max_diff(q_tensor(r), oracle::q_tensor(r)) <= 1e-12 * scale);
    const Tensor4 b = b_tensor(r);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) CHECK(b[idx4(i, j, k, l)] == doctest::Approx(b[idx4(j, i, l, k)]));
  }
}

TEST_CASE("b_tensor for curvature operator = identity: B = 2 d_ij d_kl + d_ik d_jl") {
  const Tensor4 b = b_tensor(constant_curvature(1.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double expected = 2.0 * (i == j) * (k == l) + 1.0 * (i == k) * (j == l);
          CHECK(b[idx4(i, j, k, l)] == doctest::Approx(expected));
        }
  // Q = 6 kappa R in dimension four (Delta R = 0, lambda = 3 kappa).
  const Tensor4 q = q_tensor(constant_curvature(1.0));
  CHECK(q[idx4(0, 1, 0, 1)] == doctest::Approx(6.0));
  CHECK(q[idx4(0, 1, 1, 0)] == doctest::Approx(-6.0));
}

TEST_CASE("Q_0303 on the two worked examples") {
  // K01 = K23 = 1, K03 = K12 = -1, others 0.
  const Riemann4 d = diagonal_tensor({1.0, 0.0, -1.0, 1.0, 0.0, -1.0});
  CHECK(q_tensor(d)[idx4(0, 3, 0, 3)] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(q_tensor(weyl_example())[idx4(0, 3, 0, 3)] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("to_riemann: closed-form components and the independent reconstruction") {
  CHECK(to_riemann(WeylBlocks{}).max_abs() == 0.0);

  const Riemann4 r = weyl_example();
  CHECK(r(0, 1, 0, 1) == doctest::Approx(1.0));
  CHECK(r(0, 2, 0, 2) == doctest::Approx(0.0));
  CHECK(r(0, 3, 0, 3) == doctest::Approx(-1.0));
  CHECK(r(0, 1, 2, 3) == doctest::Approx(0.5));
  CHECK(r(0, 2, 3, 1) == doctest::Approx(-0.5));
  CHECK(r(0, 3, 1, 2) == doctest::Approx(0.0));

  WeylBlocks same;
  same.w_plus = same.w_minus = Vec3(0.7, -0.2, -0.5).asDiagonal();
  const Riemann4 s = to_riemann(same);
  CHECK(s(0, 1, 0, 1) == doctest::Approx(0.7));
  CHECK(s(0, 2, 0, 2) == doctest::Approx(-0.2));
  CHECK(s(0, 3, 0, 3) == doctest::Approx(-0.5));
  CHECK(std::abs(s(0, 1, 2, 3)) + std::abs(s(0, 2, 3, 1)) + std::abs(s(0, 3, 1, 2)) <= 1e-15);

  for (std::uint64_t i = 0; i < 50; ++i) {
    const WeylBlocks w = sample_ricci_flat(stream_seed(3, i), 2.0);
    CHECK(oracle::max_diff(to_riemann(w).components(), oracle::tensor_from_weyl(w)) <= 1e-14);
  }

  WeylBlocks bad;
  bad.w_plus = Vec3(1.0, 0.0, 0.0).asDiagonal();
  CHECK_THROWS_AS((void)to_riemann(bad), InvariantViolation);
  WeylBlocks asym;
  asym.w_minus(0, 1) = 1.0;
  CHECK_THROWS_AS((void)to_riemann(asym), InvariantViolation);
}

TEST_CASE("curvature operator round trips") {
  CHECK(curvature_operator(Riemann4{}).cwiseAbs().maxCoeff() == 0.0);
  const Mat6 d = curvature_operator(diagonal_tensor({1.0, 0.0, -1.0, 1.0, 0.0, -1.0}));
  Vec6 diag;
  diag << 1, 0, -1, 1, 0, -1;
  CHECK((d - Mat6(diag.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-15);

  for (std::uint64_t i = 0; i < 50; ++i) {
    const WeylBlocks w = sample_ricci_flat(stream_seed(4, i));
    const Riemann4 r = to_riemann(w);
    const SelfDualSplit sp = split_self_dual(r);
    CHECK((sp.plus - w.w_plus).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((sp.minus - w.w_minus).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(sp.cross_block <= 1e-12);
    const WeylBlocks back = weyl_blocks(r);
    CHECK((back.w_plus - w.w_plus).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(oracle::max_diff(from_curvature_operator(curvature_operator(r)).components(), r.components()) <= 1e-14);
    // The operator, pushed back through the independent reconstruction.
    CHECK(oracle::max_diff(oracle::tensor_from_operator(curvature_operator(r)), r.components()) <= 1e-14);
  }
  CHECK_THROWS_AS((void)weyl_blocks(constant_curvature(1.0)), InvariantViolation);
}

TEST_CASE("sample_ricci_flat is deterministic and bounded") {
  const WeylBlocks a = sample_ricci_flat(123, 0.5), b = sample_ricci_flat(123, 0.5);
  CHECK(a.w_plus == b.w_plus);
  CHECK(a.w_minus == b.w_minus);
  CHECK(a.w_plus.cwiseAbs().maxCoeff() <= 0.5);
  CHECK(a.w_minus.cwiseAbs().maxCoeff() <= 0.5);
  CHECK(std::abs(a.w_plus.trace()) <= 1e-15);
  CHECK((a.w_plus - a.w_plus.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conjugate: identity, inverse, composition, sectional invariance") {
  const Riemann4 r = random_riemann(11);
  CHECK(oracle::max_diff(conjugate(r, Frame4::identity()).components(), r.components()) == 0.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Frame4 f = random_frame(s), g = random_frame(s + 500);
    const Riemann4 back = conjugate(conjugate(r, f), f.transposed());
    CHECK(oracle::max_diff(back.components(), r.components()) <= 1e-12);
    // (R^F)^G = R^(FG)
    const Riemann4 fg = conjugate(r, Frame4(f.basis() * g.basis()));
    CHECK(oracle::max_diff(conjugate(conjugate(r, f), g).components(), fg.components()) <= 1e-12);
    // K'(e0, e1) = K(F e0, F e1)
    const double k = sectional(conjugate(r, f), Plane2(Vec4::UnitX(), Vec4::UnitY()));
    CHECK(k == doctest::Approx(oracle::sectional(r.components(), f.axis(0), f.axis(1))).epsilon(1e-12));
  }

  const Riemann4 d = ricci_flat_diagonal();
  const double t = 0.4;
  Mat4 rot = Mat4::Identity();
  rot(0, 0) = rot(1, 1) = std::cos(t);
  rot(1, 0) = std::sin(t);
  rot(0, 1) = -std::sin(t);
  const Riemann4 dr = conjugate(d, Frame4(rot));
  CHECK(sectional(dr, Plane2(Vec4::UnitX(), Vec4::UnitY())) == doctest::Approx(1.0).epsilon(1e-14));

  Mat4 skew = Mat4::Identity();
  skew(0, 1) = 1e-3;
  CHECK_THROWS_AS(Frame4{skew}, InvariantViolation);
}

TEST_CASE("plane construction") {
  CHECK_THROWS_AS(Plane2(Vec4(1, 0, 0, 0), Vec4(1, 1, 0, 0)), InvariantViolation);
  const Plane2 p = Plane2::spanned_by(Vec4(1, 1, 0, 0), Vec4(0, 1, 1, 0));
  CHECK(p.u().norm() == doctest::Approx(1.0));
  CHECK(p.u().dot(p.v()) == doctest::Approx(0.0));
  const Plane2 q = Plane2::from_bivector(p.bivector());
  CHECK((q.bivector() - p.bivector()).norm() <= 1e-12);
  const Plane2 c = p.complement();
  Mat4 m;
  m << p.u(), p.v(), c.u(), c.v();
  CHECK(m.determinant() == doctest::Approx(1.0));
}
