#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qdlab/errors.hpp"
#include "qdlab/numerics.hpp"
#include "qdlab/pauli.hpp"
#include "qdlab/states.hpp"
#include "qdlab/types.hpp"

// Correlation measures for two-qubit states: mutual information, classical
// correlation over projective measurements, quantum discord, the geometric
// discord through three independent routes (singular values, the K matrix,
// direct minimization over zero-discord states), and concurrence.
// All entropic quantities are in bits.

namespace qdlab {

enum class Side { A, B };

// Projective measurement direction n = (sin t cos f, sin t sin f, cos t).
template <typename Scalar>
struct MeasurementBasis {
  Scalar theta = 0;
  Scalar phi = 0;

  Vector3<Scalar> direction() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }

  // E_1 = (1 + n.sigma)/2, E_2 = 1 - E_1.
  Matrix2c<Scalar> projector(int k) const {
    const Vector3<Scalar> n = direction();
    Matrix2c<Scalar> e = Matrix2c<Scalar>::Identity();
    for (int i = 0; i < 3; ++i) e += n(i) * pauli<Scalar>(i + 1);
    e /= Scalar(2);
    if (k == 1) return e;
    return Matrix2c<Scalar>::Identity() - e;
  }
};

template <typename Scalar>
struct OptimizerConfig {
  int grid_theta = 64;
  int grid_phi = 128;
  Scalar refine_tol = Scalar(1e-10);  // angle tolerance of the refinement
  int restarts = 32;                  // multi-start count (direct minimizer)
  std::uint64_t seed = 42;
  int max_iter = 2000;
};

template <typename Scalar>
struct CorrelationReport {
  Scalar mutual_info = 0;
  Scalar classical_corr = 0;
  Scalar discord = 0;
  Scalar gmqd = 0;
  Scalar concurrence = 0;
  Scalar optimal_theta = 0;
  Scalar optimal_phi = 0;
  Vector3<Scalar> e_tilde = Vector3<Scalar>::Zero();
  Vector3<Scalar> singular_values = Vector3<Scalar>::Zero();
  Scalar k_max = 0;
  bool degenerate = false;  // top eigenvalue of K within 1e-6 of the next
};

// chi = p1 P1 (x) rho1 + (1-p1) P2 (x) rho2 with P_k the projectors along e.
template <typename Scalar>
struct ZeroDiscordCandidate {
  Scalar p1 = Scalar(0.5);
  Vector3<Scalar> e = Vector3<Scalar>::UnitZ();
  Matrix2c<Scalar> rho1 = Matrix2c<Scalar>::Identity() / Scalar(2);
  Matrix2c<Scalar> rho2 = Matrix2c<Scalar>::Identity() / Scalar(2);

  Matrix4c<Scalar> assemble() const {
    Matrix2c<Scalar> p = Matrix2c<Scalar>::Identity();
    for (int i = 0; i < 3; ++i) p += e(i) * pauli<Scalar>(i + 1);
    p /= Scalar(2);
    const Matrix2c<Scalar> q = Matrix2c<Scalar>::Identity() - p;
    return p1 * kron(p, rho1) + (Scalar(1) - p1) * kron(q, rho2);
  }
};

template <typename Scalar>
Scalar mutual_information(const DensityMatrix<Scalar>& rho) {
  return von_neumann_entropy(rho.reduced_a()) +
         von_neumann_entropy(rho.reduced_b()) -
         von_neumann_entropy(rho.matrix());
}

// Measurement-conditioned mutual information, density-matrix route:
// H(rho_B) - sum_k p_k H(rho_B|k) for a projective measurement on A
// (roles swapped for side B). Outcomes with p_k < 1e-14 contribute zero.
template <typename Scalar>
Scalar measured_mutual_information(const DensityMatrix<Scalar>& rho,
                                   const MeasurementBasis<Scalar>& basis,
                                   Side side = Side::A) {
  const Matrix4c<Scalar> m =
      side == Side::A ? rho.matrix() : swap_qubits(rho.matrix());
  Scalar result = von_neumann_entropy(trace_out_a(m));
  for (int k = 1; k <= 2; ++k) {
    const Matrix4c<Scalar> projected =
        kron(basis.projector(k), Matrix2c<Scalar>::Identity()) * m;
    const Scalar pk = projected.trace().real();
    if (pk < Scalar(1e-14)) continue;
    const Matrix2c<Scalar> cond = trace_out_a(projected) / pk;
    result -= pk * von_neumann_entropy(cond);
  }
  return result;
}

// Same quantity from the Bloch form; used by the optimizer (a few dozen
// flops per direction instead of 4x4 spectral calls).
template <typename Scalar>
Scalar measured_mutual_information(const BlochForm<Scalar>& b,
                                   const Vector3<Scalar>& n) {
  Scalar result = binary_entropy_from_bloch(b.y.norm());
  const Vector3<Scalar> rn = b.R.transpose() * n;
  const Scalar overlap = n.dot(b.x);
  for (int sign : {+1, -1}) {
    const Scalar pk = (Scalar(1) + Scalar(sign) * overlap) / 2;
    if (pk < Scalar(1e-14)) continue;
    const Vector3<Scalar> cond = (b.y + Scalar(sign) * rn) / (2 * pk);
    result -= pk * binary_entropy_from_bloch(cond.norm());
  }
  return result;
}

template <typename Scalar>
struct ClassicalCorrelation {
  Scalar value = 0;
  MeasurementBasis<Scalar> basis;
};

namespace detail {

// Golden-section maximization of f over [lo, hi] down to width `tol`.
// Also folds every sample into (best_t, best_f).
template <typename Scalar, typename F>
void golden_max(F&& f, Scalar lo, Scalar hi, Scalar tol, Scalar& best_t,
                Scalar& best_f) {
  constexpr Scalar invphi = Scalar(0.6180339887498949);
  const auto consider = [&](Scalar t, Scalar v) {
    if (v > best_f) {
      best_f = v;
      best_t = t;
    }
  };
  Scalar c = hi - invphi * (hi - lo);
  Scalar d = lo + invphi * (hi - lo);
  Scalar fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
      consider(d, fd);
    }
  }
}

}  // namespace detail

// Maximum of the measured mutual information over one-dimensional projective
// measurements: coarse (theta, phi) grid followed by coordinate-wise
// golden-section refinement. The result is never below any evaluated sample.
template <typename Scalar>
ClassicalCorrelation<Scalar> classical_correlation(
    const DensityMatrix<Scalar>& rho, Side side = Side::A,
    const OptimizerConfig<Scalar>& cfg = {}) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const DensityMatrix<Scalar> oriented = side == Side::A ? rho : rho.swapped();
  const BlochForm<Scalar> b = to_bloch(oriented);

  const auto objective = [&](Scalar theta, Scalar phi) {
    const Vector3<Scalar> n{std::sin(theta) * std::cos(phi),
                            std::sin(theta) * std::sin(phi), std::cos(theta)};
    return measured_mutual_information(b, n);
  };

  const Scalar dtheta = pi / Scalar(cfg.grid_theta - 1);
  const Scalar dphi = 2 * pi / Scalar(cfg.grid_phi);
  Scalar best_f = -1, best_theta = 0, best_phi = 0;
  for (int i = 0; i < cfg.grid_theta; ++i) {
    const Scalar theta = Scalar(i) * dtheta;
    for (int j = 0; j < cfg.grid_phi; ++j) {
      const Scalar phi = Scalar(j) * dphi;
      const Scalar v = objective(theta, phi);
      if (v > best_f) {
        best_f = v;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  bool converged = false;
  for (int round = 0; round < cfg.max_iter && !converged; ++round) {
    const Scalar theta_before = best_theta, phi_before = best_phi;
    detail::golden_max<Scalar>(
        [&](Scalar t) { return objective(t, best_phi); },
        std::max(Scalar(0), best_theta - dtheta),
        std::min(pi, best_theta + dtheta), cfg.refine_tol, best_theta, best_f);
    detail::golden_max<Scalar>(
        [&](Scalar f) { return objective(best_theta, f); },
        best_phi - dphi, best_phi + dphi, cfg.refine_tol, best_phi, best_f);
    converged = std::abs(best_theta - theta_before) <= cfg.refine_tol &&
                std::abs(best_phi - phi_before) <= cfg.refine_tol;
  }
  if (!converged)
    throw OptimizerFailure(
        "classical_correlation: angle refinement did not converge within "
        "max_iter rounds");

  best_phi = std::fmod(best_phi, 2 * pi);
  if (best_phi < Scalar(0)) best_phi += 2 * pi;
  return {best_f, {best_theta, best_phi}};
}

template <typename Scalar>
struct Discord {
  Scalar value = 0;
  MeasurementBasis<Scalar> basis;
};

// Mutual information minus classical correlation; values in [-1e-9, 0)
// collapse to zero.
template <typename Scalar>
Discord<Scalar> quantum_discord(const DensityMatrix<Scalar>& rho,
                                Side side = Side::A,
                                const OptimizerConfig<Scalar>& cfg = {}) {
  const auto cc = classical_correlation(rho, side, cfg);
  Scalar d = mutual_information(rho) - cc.value;
  if (d < Scalar(0) && d >= Scalar(-1e-9)) d = 0;
  return {d, cc.basis};
}

template <typename Scalar>
struct GmqdSvd {
  Scalar value = 0;
  Vector3<Scalar> singular_values = Vector3<Scalar>::Zero();  // descending
};

// Geometric discord from the singular values of the 3x4 block (x, R):
// (1/4) (sum_k l_k^2 - max_k l_k^2). Measurement side A; swap the qubits
// beforehand for side B.
template <typename Scalar>
GmqdSvd<Scalar> gmqd_svd(const DensityMatrix<Scalar>& rho) {
  const BlochForm<Scalar> b = to_bloch(rho);
  Matrix34<Scalar> rp;
  rp.col(0) = b.x;
  rp.template rightCols<3>() = b.R;
  GmqdSvd<Scalar> out;
  out.singular_values = singular_values(rp);
  out.value = (out.singular_values.squaredNorm() -
               out.singular_values(0) * out.singular_values(0)) /
              4;
  return out;
}

template <typename Scalar>
Matrix3<Scalar> k_matrix(const BlochForm<Scalar>& b) {
  return b.x * b.x.transpose() + b.R * b.R.transpose();
}

template <typename Scalar>
struct GmqdEig {
  Scalar value = 0;
  Vector3<Scalar> e_tilde = Vector3<Scalar>::Zero();
  Scalar k_max = 0;
  bool degenerate = false;  // eigenvalue gap below 1e-6
};

// Geometric discord from K = x x^T + R R^T:
// (1/4)(|x|^2 + |R|^2 - k_max). e_tilde is a top eigenvector of K with its
// first component of magnitude > 1e-12 made positive; when the top two
// eigenvalues are closer than 1e-6 the direction is reported but flagged.
template <typename Scalar>
GmqdEig<Scalar> gmqd_eig(const DensityMatrix<Scalar>& rho) {
  const BlochForm<Scalar> b = to_bloch(rho);
  const auto eig = hermitian_eigensystem(k_matrix(b));
  GmqdEig<Scalar> out;
  out.k_max = eig.eigenvalues(0);
  out.value = (b.x.squaredNorm() + b.R.squaredNorm() - out.k_max) / 4;
  out.e_tilde = eig.eigenvectors.col(0);
  for (int i = 0; i < 3; ++i) {
    if (std::abs(out.e_tilde(i)) > Scalar(1e-12)) {
      if (out.e_tilde(i) < Scalar(0)) out.e_tilde = -out.e_tilde;
      break;
    }
  }
  out.degenerate = eig.eigenvalues(0) - eig.eigenvalues(1) < Scalar(1e-6);
  return out;
}

template <typename Scalar>
struct GmqdBruteForce {
  Scalar value = 0;
  ZeroDiscordCandidate<Scalar> candidate;
};

namespace detail {

// Nelder-Mead descent with reflection/expansion/contraction/shrink on a
// fixed-dimension parameter vector. Returns true if the simplex collapsed
// (converged) within max_iter iterations.
template <typename Scalar, int Dim, typename F>
bool nelder_mead(F&& f, Eigen::Matrix<Scalar, Dim, 1>& x, Scalar& fx,
                 const Eigen::Matrix<Scalar, Dim, 1>& step, int max_iter) {
  using Point = Eigen::Matrix<Scalar, Dim, 1>;
  struct Vertex {
    Point p;
    Scalar f;
  };
  std::vector<Vertex> simplex(Dim + 1);
  simplex[0] = {x, f(x)};
  for (int i = 0; i < Dim; ++i) {
    Point p = x;
    p(i) += step(i);
    simplex[i + 1] = {p, f(p)};
  }
  const auto by_value = [](const Vertex& a, const Vertex& b) {
    return a.f < b.f;
  };

  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex[Dim].f - simplex[0].f < Scalar(1e-13)) {
      converged = true;
      break;
    }
    Point centroid = Point::Zero();
    for (int i = 0; i < Dim; ++i) centroid += simplex[i].p;
    centroid /= Scalar(Dim);

    const Point reflected = centroid + (centroid - simplex[Dim].p);
    const Scalar fr = f(reflected);
    if (fr < simplex[0].f) {
      const Point expanded = centroid + 2 * (centroid - simplex[Dim].p);
      const Scalar fe = f(expanded);
      simplex[Dim] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
    } else if (fr < simplex[Dim - 1].f) {
      simplex[Dim] = {reflected, fr};
    } else {
      const Point contracted =
          centroid + Scalar(0.5) * (simplex[Dim].p - centroid);
      const Scalar fc = f(contracted);
      if (fc < simplex[Dim].f) {
        simplex[Dim] = {contracted, fc};
      } else {
        for (int i = 1; i <= Dim; ++i) {
          simplex[i].p =
              simplex[0].p + Scalar(0.5) * (simplex[i].p - simplex[0].p);
          simplex[i].f = f(simplex[i].p);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  x = simplex[0].p;
  fx = simplex[0].f;
  return converged;
}

// Parameter layout of the zero-discord family: (e_theta, e_phi, p1,
// bloch1 xyz, bloch2 xyz). Bloch vectors are projected into the unit ball,
// p1 into [0,1]; the angles are free.
template <typename Scalar>
ZeroDiscordCandidate<Scalar> candidate_from_params(
    const Eigen::Matrix<Scalar, 9, 1>& q) {
  ZeroDiscordCandidate<Scalar> c;
  c.e = Vector3<Scalar>{std::sin(q(0)) * std::cos(q(1)),
                        std::sin(q(0)) * std::sin(q(1)), std::cos(q(0))};
  c.p1 = std::clamp(q(2), Scalar(0), Scalar(1));
  const auto qubit = [](Vector3<Scalar> v) {
    const Scalar norm = v.norm();
    if (norm > Scalar(1)) v /= norm;
    Matrix2c<Scalar> m = Matrix2c<Scalar>::Identity();
    for (int i = 0; i < 3; ++i) m += v(i) * pauli<Scalar>(i + 1);
    return (m / Scalar(2)).eval();
  };
  c.rho1 = qubit(q.template segment<3>(3));
  c.rho2 = qubit(q.template segment<3>(6));
  return c;
}

}  // namespace detail

// Geometric discord by direct minimization of the squared Hilbert-Schmidt
// distance over the 9-parameter zero-discord family, with seeded random
// restarts. Serves as an oracle for the closed-form routes.
template <typename Scalar>
GmqdBruteForce<Scalar> gmqd_bruteforce(const DensityMatrix<Scalar>& rho,
                                       const OptimizerConfig<Scalar>& cfg = {}) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  using Point = Eigen::Matrix<Scalar, 9, 1>;
  const auto objective = [&](const Point& q) {
    return (rho.matrix() - detail::candidate_from_params(q).assemble())
        .squaredNorm();
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<Scalar> unit(0, 1);
  Point step;
  step << Scalar(0.3), Scalar(0.3), Scalar(0.2), Scalar(0.3), Scalar(0.3),
      Scalar(0.3), Scalar(0.3), Scalar(0.3), Scalar(0.3);

  Point best = Point::Zero();
  Scalar best_f = std::numeric_limits<Scalar>::infinity();
  int converged = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Point q;
    q(0) = unit(rng) * pi;
    q(1) = unit(rng) * 2 * pi;
    q(2) = unit(rng);
    for (int i = 3; i < 9; ++i) q(i) = 2 * unit(rng) - 1;
    Scalar fq;
    if (detail::nelder_mead<Scalar, 9>(objective, q, fq, step, cfg.max_iter))
      ++converged;
    if (fq < best_f) {
      best_f = fq;
      best = q;
    }
  }
  if (converged == 0)
    throw OptimizerFailure(
        "gmqd_bruteforce: no restart converged within max_iter iterations");
  return {best_f, detail::candidate_from_params(best)};
}

// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with l_i the descending
// square roots of the eigenvalues of rho (sy(x)sy) rho* (sy(x)sy), computed
// through the Hermitian form sqrt(rho) rho~ sqrt(rho).
template <typename Scalar>
Scalar concurrence(const DensityMatrix<Scalar>& rho) {
  const Matrix4c<Scalar> yy = pauli_pair<Scalar>(2, 2);
  const Matrix4c<Scalar> flipped =
      yy * rho.matrix().conjugate() * yy;

  const auto eig = hermitian_eigensystem(rho.matrix());
  Matrix4c<Scalar> sqrt_rho = Matrix4c<Scalar>::Zero();
  for (int k = 0; k < 4; ++k) {
    const Scalar lambda = std::max(eig.eigenvalues(k), Scalar(0));
    sqrt_rho += std::sqrt(lambda) * eig.eigenvectors.col(k) *
                eig.eigenvectors.col(k).adjoint();
  }

  const auto inner = hermitian_eigensystem(
      (sqrt_rho * flipped * sqrt_rho).eval());
  Vector4<Scalar> roots;
  for (int k = 0; k < 4; ++k)
    roots(k) = std::sqrt(std::max(inner.eigenvalues(k), Scalar(0)));
  return std::max(Scalar(0), roots(0) - roots(1) - roots(2) - roots(3));
}

// All correlation quantities of one state in a single pass; side B is
// handled by exchanging the qubits first.
template <typename Scalar>
CorrelationReport<Scalar> correlation_report(
    const DensityMatrix<Scalar>& rho, Side side = Side::A,
    const OptimizerConfig<Scalar>& cfg = {}) {
  const DensityMatrix<Scalar> oriented = side == Side::A ? rho : rho.swapped();
  CorrelationReport<Scalar> rep;
  rep.mutual_info = mutual_information(oriented);
  const auto cc = classical_correlation(oriented, Side::A, cfg);
  rep.classical_corr = cc.value;
  rep.optimal_theta = cc.basis.theta;
  rep.optimal_phi = cc.basis.phi;
  rep.discord = rep.mutual_info - rep.classical_corr;
  if (rep.discord < Scalar(0) && rep.discord >= Scalar(-1e-9)) rep.discord = 0;
  const auto svd = gmqd_svd(oriented);
  rep.gmqd = svd.value;
  rep.singular_values = svd.singular_values;
  const auto eig = gmqd_eig(oriented);
  rep.e_tilde = eig.e_tilde;
  rep.k_max = eig.k_max;
  rep.degenerate = eig.degenerate;
  rep.concurrence = concurrence(oriented);
  return rep;
}

}  // namespace qdlab
