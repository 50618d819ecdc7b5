#pragma once

// Local maximization of a quadratic on a product of unit 2-spheres.
//
// f(x) = x^T Q x + g^T x + c, with x split into `Blocks` consecutive unit
// 3-vectors. Used for sectional curvature on S^2 x S^2 (two blocks) and for
// holomorphic sectional curvature on CP^1 viewed as S^2 (one block).
//
// Each start runs projected gradient ascent with backtracking, then Newton on
// the Lagrange system; a positive tangent Hessian eigenvalue at the limit
// means a saddle, which is escaped along that eigenvector before resuming.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace rfgap {

/// n quasi-uniform unit vectors (Fibonacci spiral), rotated by `twist`.
inline std::vector<Eigen::Vector3d> fibonacci_sphere(int n, double twist = 0.0) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i + twist;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

template <int Blocks>
struct SphereQuadratic {
  static constexpr int N = 3 * Blocks;
  using Vec = Eigen::Matrix<double, N, 1>;
  using Mat = Eigen::Matrix<double, N, N>;

  Mat quad = Mat::Zero();
  Vec lin = Vec::Zero();
  double constant = 0.0;

  [[nodiscard]] double value(const Vec& x) const { return x.dot(quad * x) + lin.dot(x) + constant; }
  [[nodiscard]] Vec gradient(const Vec& x) const { return 2.0 * (quad * x) + lin; }

  [[nodiscard]] double scale() const {
    return std::max({quad.cwiseAbs().maxCoeff(), lin.cwiseAbs().maxCoeff(), 1e-300});
  }

  [[nodiscard]] SphereQuadratic negated() const { return {-quad, -lin, -constant}; }
};

template <int Blocks>
struct SphereOptimum {
  typename SphereQuadratic<Blocks>::Vec point;
  double value = 0.0;
  double gradient_norm = 0.0;
  int start_index = -1;
  bool converged = false;
};

namespace sphere_detail {

template <int Blocks>
using Vec = typename SphereQuadratic<Blocks>::Vec;

template <int Blocks>
Vec<Blocks> normalize_blocks(Vec<Blocks> x) {
  for (int b = 0; b < Blocks; ++b) {
    auto blk = x.template segment<3>(3 * b);
    const double n = blk.norm();
    if (n > 0.0) {
      blk /= n;
    } else {
      blk = Eigen::Vector3d::UnitZ();
    }
  }
  return x;
}

template <int Blocks>
Vec<Blocks> project_tangent(const Vec<Blocks>& x, Vec<Blocks> g) {
  for (int b = 0; b < Blocks; ++b) {
    const auto xb = x.template segment<3>(3 * b);
    auto gb = g.template segment<3>(3 * b);
    gb -= xb.dot(gb) * xb;
  }
  return g;
}

// Orthonormal basis of the tangent space at x, one pair of columns per block.
template <int Blocks>
Eigen::Matrix<double, 3 * Blocks, 2 * Blocks> tangent_basis(const Vec<Blocks>& x) {
  Eigen::Matrix<double, 3 * Blocks, 2 * Blocks> t =
      Eigen::Matrix<double, 3 * Blocks, 2 * Blocks>::Zero();
  for (int b = 0; b < Blocks; ++b) {
    const Eigen::Vector3d xb = x.template segment<3>(3 * b);
    int axis = 0;
    xb.cwiseAbs().minCoeff(&axis);
    const Eigen::Vector3d a = xb.cross(Eigen::Vector3d::Unit(axis)).normalized();
    const Eigen::Vector3d c = xb.cross(a);
    t.template block<3, 1>(3 * b, 2 * b) = a;
    t.template block<3, 1>(3 * b, 2 * b + 1) = c;
  }
  return t;
}

template <int Blocks>
Vec<Blocks> multipliers_applied(const SphereQuadratic<Blocks>& f, const Vec<Blocks>& x,
                                Eigen::Matrix<double, Blocks, 1>& mu) {
  const Vec<Blocks> g = f.gradient(x);
  Vec<Blocks> dmu = Vec<Blocks>::Zero();
  for (int b = 0; b < Blocks; ++b) {
    mu(b) = x.template segment<3>(3 * b).dot(g.template segment<3>(3 * b));
    dmu.template segment<3>(3 * b).setConstant(mu(b));
  }
  return dmu;
}

// Largest eigenpair of the Riemannian Hessian at a critical point.
template <int Blocks>
std::pair<double, Vec<Blocks>> top_tangent_curvature(const SphereQuadratic<Blocks>& f,
                                                     const Vec<Blocks>& x) {
  Eigen::Matrix<double, Blocks, 1> mu;
  const Vec<Blocks> dmu = multipliers_applied(f, x, mu);
  const typename SphereQuadratic<Blocks>::Mat he =
      2.0 * f.quad - typename SphereQuadratic<Blocks>::Mat(dmu.asDiagonal());
  const auto t = tangent_basis<Blocks>(x);
  const Eigen::Matrix<double, 2 * Blocks, 2 * Blocks> ht = t.transpose() * he * t;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 2 * Blocks, 2 * Blocks>> es(ht);
  const int top = 2 * Blocks - 1;
  return {es.eigenvalues()(top), t * es.eigenvectors().col(top)};
}

}  // namespace sphere_detail

/// Best local maximum over all starts; ties keep the lowest start index.
template <int Blocks>
SphereOptimum<Blocks> maximize_on_spheres(const SphereQuadratic<Blocks>& f,
                                          const std::vector<typename SphereQuadratic<Blocks>::Vec>& starts,
                                          double grad_tol = 1e-12) {
  using namespace sphere_detail;
  using V = typename SphereQuadratic<Blocks>::Vec;
  constexpr int N = 3 * Blocks;
  constexpr int K = N + Blocks;
  const double scale = f.scale();
  const double tol = grad_tol * std::max(1.0, scale);

  SphereOptimum<Blocks> best;
  best.value = -std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < starts.size(); ++s) {
    V x = normalize_blocks<Blocks>(starts[s]);
    double fx = f.value(x);
    double step = 0.5 / scale;
    double switch_tol = 1e-3 * scale;
    bool done = false;

    for (int round = 0; round < 12 && !done; ++round) {
      // Gradient phase.
      for (int it = 0; it < 400; ++it) {
        const V g = project_tangent<Blocks>(x, f.gradient(x));
        const double gn2 = g.squaredNorm();
        if (std::sqrt(gn2) < switch_tol) break;
        double t = step;
        bool accepted = false;
        while (t > 1e-18 / scale) {
          const V y = normalize_blocks<Blocks>(x + t * g);
          const double fy = f.value(y);
          if (fy >= fx + 1e-4 * t * gn2) {
            x = y;
            fx = fy;
            accepted = true;
            break;
          }
          t *= 0.5;
        }
        if (!accepted) break;
        step = std::min(2.0 * t, 4.0 / scale);
      }

      // Newton phase on  grad f = mu x,  |x_b| = 1.
      V xn = x;
      double fn = fx;
      for (int it = 0; it < 40; ++it) {
        Eigen::Matrix<double, Blocks, 1> mu;
        const V dmu = multipliers_applied(f, xn, mu);
        const V g = f.gradient(xn);
        Eigen::Matrix<double, K, 1> rhs = Eigen::Matrix<double, K, 1>::Zero();
        rhs.template head<N>() = -(g - dmu.cwiseProduct(xn));
        Eigen::Matrix<double, K, K> jac = Eigen::Matrix<double, K, K>::Zero();
        jac.template topLeftCorner<N, N>() =
            2.0 * f.quad - typename SphereQuadratic<Blocks>::Mat(dmu.asDiagonal());
        for (int b = 0; b < Blocks; ++b) {
          jac.template block<3, 1>(3 * b, N + b) = -xn.template segment<3>(3 * b);
          jac.template block<1, 3>(N + b, 3 * b) = xn.template segment<3>(3 * b).transpose();
        }
        const Eigen::Matrix<double, K, 1> delta =
            Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, K, K>>(jac).solve(rhs);
        xn = normalize_blocks<Blocks>(xn + delta.template head<N>());
        fn = f.value(xn);
        if (project_tangent<Blocks>(xn, f.gradient(xn)).norm() < tol) break;
      }

      const double gnorm = project_tangent<Blocks>(xn, f.gradient(xn)).norm();
      if (gnorm < tol && fn >= fx - 1e-9 * scale) {
        x = xn;
        fx = fn;
        const auto [curv, dir] = top_tangent_curvature<Blocks>(f, x);
        if (curv <= 1e-8 * scale) {
          done = true;
          break;
        }
        // Saddle: move along the ascending direction and start over.
        double best_gain = 0.0;
        V best_y = x;
        for (double t : {0.5, -0.5, 0.25, -0.25, 0.1, -0.1, 0.03, -0.03, 1e-2, -1e-2}) {
          const V y = normalize_blocks<Blocks>(x + t * dir);
          const double gain = f.value(y) - fx;
          if (gain > best_gain) {
            best_gain = gain;
            best_y = y;
          }
        }
        if (best_gain <= 0.0) {
          done = true;  // flat to working precision
          break;
        }
        x = best_y;
        fx = f.value(x);
        switch_tol = 1e-3 * scale;
      } else {
        // Newton left the basin; tighten the hand-off and keep climbing.
        switch_tol *= 1e-2;
      }
    }

    const double gnorm = project_tangent<Blocks>(x, f.gradient(x)).norm();
    if (fx > best.value) {
      best.point = x;
      best.value = fx;
      best.gradient_norm = gnorm;
      best.start_index = static_cast<int>(s);
      best.converged = gnorm < 1e-10 * std::max(1.0, scale);
    }
  }
  return best;
}

template <int Blocks>
SphereOptimum<Blocks> minimize_on_spheres(const SphereQuadratic<Blocks>& f,
                                          const std::vector<typename SphereQuadratic<Blocks>::Vec>& starts,
                                          double grad_tol = 1e-12) {
  SphereOptimum<Blocks> r = maximize_on_spheres<Blocks>(f.negated(), starts, grad_tol);
  r.value = -r.value;
  return r;
}

}  // namespace rfgap
