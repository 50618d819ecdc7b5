#pragma once

// Algebraic curvature tensors on a 4-dimensional inner-product space.
//
// Sign convention: R(i,j,i,j) is the sectional curvature of span(e_i, e_j), and
// the Ricci contraction is Ric_ij = sum_p R(i,p,j,p).
//
// Bivector conventions shared by every module:
//   standard basis  b = (e01, e02, e03, e23, e31, e12)
//   f_k = e0 ^ e_k,  g_k = e_l ^ e_m  for (k,l,m) cyclic in (1,2,3)
//   self-dual / anti-self-dual basis  w_k^(+-) = (f_k +- g_k) / sqrt(2)

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

namespace rfgap {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Dense rank-4 array on R^4, row-major in (i,j,k,l).
using Tensor4 = std::array<double, 256>;

constexpr std::size_t idx4(int i, int j, int k, int l) noexcept {
  return static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l);
}

inline constexpr double kInvariantTol = 1e-10;

class Frame4;

/// Index pairs of the standard bivector basis, in order.
inline constexpr std::array<std::array<int, 2>, 6> kBivectorPairs{
    {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

/// Largest violation of each invariant family on a raw array.
struct InvariantAudit {
  double antisymmetry = 0.0;
  double pair_symmetry = 0.0;
  double bianchi = 0.0;

  [[nodiscard]] double worst() const noexcept;
};

[[nodiscard]] InvariantAudit audit_invariants(const Tensor4& t);

/// An algebraic curvature tensor. Instances only come out of the projection
/// (symmetrize), a validating factory, or operations that preserve the class.
class Riemann4 {
 public:
  Riemann4() = default;

  /// Checks the invariants within `tol` (scaled by the largest entry) and
  /// throws InvariantViolation otherwise.
  static Riemann4 validated(const Tensor4& components, double tol = kInvariantTol);

  double operator()(int i, int j, int k, int l) const noexcept { return c_[idx4(i, j, k, l)]; }
  [[nodiscard]] const Tensor4& components() const noexcept { return c_; }
  [[nodiscard]] double max_abs() const noexcept;

  [[nodiscard]] Riemann4 scaled(double t) const noexcept;
  [[nodiscard]] Riemann4 plus(const Riemann4& other) const noexcept;

  friend bool operator==(const Riemann4&, const Riemann4&) = default;

 private:
  explicit Riemann4(const Tensor4& c) : c_(c) {}
  friend Riemann4 symmetrize(const Tensor4& raw);
  friend Riemann4 from_curvature_operator(const Mat6& op);
  friend Riemann4 conjugate(const Riemann4& r, const Frame4& f);

  Tensor4 c_{};
};

/// Trace-free symmetric 3x3 blocks (W+, W-) of a Ricci-flat curvature operator.
struct WeylBlocks {
  Mat3 w_plus = Mat3::Zero();
  Mat3 w_minus = Mat3::Zero();
};

/// Orthonormal pair spanning a 2-plane.
class Plane2 {
 public:
  /// Throws InvariantViolation unless |u| = |v| = 1 and <u,v> = 0 within 1e-12.
  Plane2(const Vec4& u, const Vec4& v);

  /// Gram-Schmidt on a linearly independent pair.
  static Plane2 spanned_by(const Vec4& a, const Vec4& b);

  /// The plane whose unit decomposable bivector has the given standard-basis
  /// coordinates. The bivector must be decomposable and nonzero.
  static Plane2 from_bivector(const Vec6& omega);

  [[nodiscard]] const Vec4& u() const noexcept { return u_; }
  [[nodiscard]] const Vec4& v() const noexcept { return v_; }

  /// u ^ v in the standard bivector basis.
  [[nodiscard]] Vec6 bivector() const noexcept;

  /// Orthogonal complement, oriented so that (u, v, u', v') is positive.
  [[nodiscard]] Plane2 complement() const;

 private:
  Vec4 u_;
  Vec4 v_;
};

/// Orthonormal frame; column a is e_a.
class Frame4 {
 public:
  /// Throws InvariantViolation unless the columns are orthonormal within `tol`.
  explicit Frame4(const Mat4& basis, double tol = kInvariantTol);

  static Frame4 identity() { return Frame4(Mat4::Identity()); }

  [[nodiscard]] const Mat4& basis() const noexcept { return basis_; }
  [[nodiscard]] Vec4 axis(int a) const { return basis_.col(a); }
  [[nodiscard]] Frame4 transposed() const { return Frame4(basis_.transpose()); }

 private:
  Mat4 basis_;
};

struct EinsteinData {
  double lambda = 0.0;
};

/// Orthogonal projection onto algebraic curvature tensors.
[[nodiscard]] Riemann4 symmetrize(const Tensor4& raw);

[[nodiscard]] Mat4 ricci(const Riemann4& r);

/// Einstein constant if Ric = lambda * I within `tol` (scaled by the tensor).
[[nodiscard]] std::optional<EinsteinData> einstein_data(const Riemann4& r, double tol = kInvariantTol);

[[nodiscard]] double sectional(const Riemann4& r, const Plane2& p);

/// B(i,j,k,l) = sum_{p,q} R(i,p,j,q) R(k,p,l,q).
[[nodiscard]] Tensor4 b_tensor(const Riemann4& r);

/// Q(i,j,k,l) = 2 (B_ijkl - B_ijlk + B_ikjl - B_iljk).
[[nodiscard]] Tensor4 q_tensor(const Riemann4& r);

/// Throws InvariantViolation if either block is non-symmetric or has
/// |trace| > 1e-10.
[[nodiscard]] Riemann4 to_riemann(const WeylBlocks& w);

/// Matrix of omega -> R(omega, omega) in the standard bivector basis.
[[nodiscard]] Mat6 curvature_operator(const Riemann4& r);

/// Inverse of curvature_operator for symmetric 6x6 input. The result satisfies
/// first Bianchi only if trace of the f/g cross block vanishes.
[[nodiscard]] Riemann4 from_curvature_operator(const Mat6& op);

/// Change of basis from the standard bivector basis to (w+_1..3, w-_1..3);
/// columns are the new basis vectors in standard coordinates.
[[nodiscard]] const Mat6& self_dual_basis();

/// Curvature operator in the (w+, w-) basis.
[[nodiscard]] Mat6 curvature_operator_pm(const Riemann4& r);

/// The (w+, w-) diagonal blocks of the curvature operator and the largest
/// entry of the off-diagonal block (zero exactly when R is Einstein).
struct SelfDualSplit {
  Mat3 plus;
  Mat3 minus;
  double cross_block = 0.0;
};
[[nodiscard]] SelfDualSplit split_self_dual(const Riemann4& r);

/// Weyl blocks of a Ricci-flat tensor. Throws InvariantViolation when the
/// tensor is not Ricci-flat within `tol`.
[[nodiscard]] WeylBlocks weyl_blocks(const Riemann4& r, double tol = kInvariantTol);

/// R'(a,b,c,d) = R(F e_a, F e_b, F e_c, F e_d).
[[nodiscard]] Riemann4 conjugate(const Riemann4& r, const Frame4& f);

/// Constant-curvature tensor kappa (delta_ik delta_jl - delta_il delta_jk).
[[nodiscard]] Riemann4 constant_curvature(double kappa);

/// Tensor with only sectional components R(i,j,i,j) = k[pair] filled, where
/// the pairs follow kBivectorPairs order (01, 02, 03, 23, 31, 12).
[[nodiscard]] Riemann4 diagonal_tensor(const std::array<double, 6>& k);

/// Random trace-free blocks with every entry in [-scale, scale]. Deterministic
/// in `seed`; per-sample seeds come from stream_seed().
[[nodiscard]] WeylBlocks sample_ricci_flat(std::uint64_t seed, double scale = 1.0);

/// Haar-random rotation of R^4 (QR of a Gaussian matrix, det fixed to +1).
[[nodiscard]] Frame4 random_frame(std::uint64_t seed);

/// Random plane from two Gaussian vectors.
[[nodiscard]] Plane2 random_plane(std::uint64_t seed);

}  // namespace rfgap
