#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "qdlab/errors.hpp"
#include "qdlab/types.hpp"

// Dense small-matrix kernels: Hermitian eigensystems, singular values,
// von Neumann entropy (base-2 logs throughout).

namespace qdlab {

// Eigenvalues of rho in [-psd_slack, 0) are treated as exact zeros when
// computing entropies; anything below -psd_slack fails validation.
inline constexpr double kPsdSlack = 1e-10;

template <typename MatrixType>
struct Eigensystem {
  using Real = typename Eigen::NumTraits<typename MatrixType::Scalar>::Real;
  using RealVector = Eigen::Matrix<Real, MatrixType::RowsAtCompileTime, 1>;

  RealVector eigenvalues;   // descending
  MatrixType eigenvectors;  // orthonormal columns, matching order
};

// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
// Throws NotHermitian when ||A - A^dag||_max > 1e-8; the decomposition itself
// runs on the symmetrized matrix (A + A^dag)/2.
template <typename Derived>
Eigensystem<typename Derived::PlainObject> hermitian_eigensystem(
    const Eigen::MatrixBase<Derived>& a) {
  using Matrix = typename Derived::PlainObject;
  const Matrix m = a.derived();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw NotHermitian("hermitian_eigensystem: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(((m + m.adjoint()) / 2).eval());
  Eigensystem<Matrix> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

// Singular values of a real or complex matrix, descending and non-negative.
template <typename Derived>
auto singular_values(const Eigen::MatrixBase<Derived>& a) {
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(a.derived());
  return svd.singularValues();
}

// -Tr[rho log2 rho] for a density matrix of any small dimension; 0 log 0 = 0.
template <typename Derived>
auto von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> solver(
      rho.derived(), Eigen::EigenvaluesOnly);
  Real h = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const Real lambda = solver.eigenvalues()(k);
    if (lambda > Real(0)) h -= lambda * std::log2(lambda);
  }
  return h;
}

// Entropy of a qubit state given its Bloch vector length.
template <typename Scalar>
Scalar binary_entropy_from_bloch(Scalar r) {
  if (r >= Scalar(1)) return Scalar(0);
  const Scalar up = (Scalar(1) + r) / 2;
  const Scalar dn = (Scalar(1) - r) / 2;
  Scalar h = 0;
  if (up > Scalar(0)) h -= up * std::log2(up);
  if (dn > Scalar(0)) h -= dn * std::log2(dn);
  return h;
}

}  // namespace qdlab
