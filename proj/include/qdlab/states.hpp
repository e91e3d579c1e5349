#pragma once

#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "qdlab/errors.hpp"
#include "qdlab/numerics.hpp"
#include "qdlab/pauli.hpp"
#include "qdlab/types.hpp"

// Two-qubit states and conversions between the density-matrix, Bloch, and
// Pauli-expectation representations.
//
// Bloch form:
//   rho = (1/4) [ 1(x)1 + sum_i (x_i s_i(x)1 + y_i 1(x)s_i)
//                 + sum_ij R_ij s_i(x)s_j ]
// Expectation matrix:
//   E_ij = Tr[rho s_i(x)s_j],  i,j = 0..3,  s_0 = 1.

namespace qdlab {

// Validated 4x4 density matrix: Hermitian, unit trace, PSD (within 1e-10).
template <typename Scalar>
class DensityMatrix {
 public:
  using Matrix = Matrix4c<Scalar>;

  explicit DensityMatrix(const Matrix& m) : m_(m) { validate(); }

  const Matrix& matrix() const { return m_; }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix::Identity() / Scalar(4));
  }

  DensityMatrix swapped() const { return DensityMatrix(swap_qubits(m_)); }

  Matrix2c<Scalar> reduced_a() const { return trace_out_b(m_); }
  Matrix2c<Scalar> reduced_b() const { return trace_out_a(m_); }

 private:
  void validate() const {
    const Scalar herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > Scalar(1e-10)) {
      std::ostringstream msg;
      msg << "not Hermitian: max |rho - rho^dag| = " << herm;
      throw NotPhysical(msg.str());
    }
    const Scalar tr = std::abs(m_.trace() - Complex<Scalar>(1, 0));
    if (tr > Scalar(1e-10)) {
      std::ostringstream msg;
      msg << "trace differs from 1 by " << tr;
      throw NotPhysical(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    const Scalar min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < Scalar(-kPsdSlack)) {
      std::ostringstream msg;
      msg << "not positive semidefinite: min eigenvalue = " << min_eig;
      throw NotPhysical(msg.str());
    }
  }

  Matrix m_;
};

template <typename Scalar>
struct BlochForm {
  Vector3<Scalar> x;    // local vector of qubit A
  Vector3<Scalar> y;    // local vector of qubit B
  Matrix3<Scalar> R;    // correlation matrix
};

// E_ij = Tr[rho s_i(x)s_j]; row 0 is (1, y^T), column 0 is (1, x^T)^T.
template <typename Scalar>
using ExpectationMatrix = Matrix4<Scalar>;

template <typename Scalar>
struct BellDiagonalParams {
  Vector3<Scalar> c;
  Scalar d = 0;  // optional z polarization on both qubits
};

template <typename Scalar>
BlochForm<Scalar> to_bloch(const DensityMatrix<Scalar>& rho) {
  BlochForm<Scalar> b;
  for (int i = 1; i <= 3; ++i) {
    b.x(i - 1) = (rho.matrix() * pauli_pair<Scalar>(i, 0)).trace().real();
    b.y(i - 1) = (rho.matrix() * pauli_pair<Scalar>(0, i)).trace().real();
    for (int j = 1; j <= 3; ++j)
      b.R(i - 1, j - 1) =
          (rho.matrix() * pauli_pair<Scalar>(i, j)).trace().real();
  }
  return b;
}

template <typename Scalar>
DensityMatrix<Scalar> from_bloch(const BlochForm<Scalar>& b) {
  Matrix4c<Scalar> m = pauli_pair<Scalar>(0, 0);
  for (int i = 1; i <= 3; ++i) {
    m += b.x(i - 1) * pauli_pair<Scalar>(i, 0);
    m += b.y(i - 1) * pauli_pair<Scalar>(0, i);
    for (int j = 1; j <= 3; ++j)
      m += b.R(i - 1, j - 1) * pauli_pair<Scalar>(i, j);
  }
  return DensityMatrix<Scalar>(m / Scalar(4));
}

template <typename Scalar>
ExpectationMatrix<Scalar> expectation_matrix(const DensityMatrix<Scalar>& rho) {
  ExpectationMatrix<Scalar> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      e(i, j) = (rho.matrix() * pauli_pair<Scalar>(i, j)).trace().real();
  return e;
}

// Rows 1..3 of the expectation matrix, i.e. the block (x, R).
template <typename Scalar>
Matrix34<Scalar> reduced_expectation(const ExpectationMatrix<Scalar>& e) {
  return e.template bottomRows<3>();
}

// Tetrahedron test for rho = (1/4)(1 + sum_i c_i s_i(x)s_i): physical iff
// sum c_i and every c_i - c_j - c_k lie in [-3, 1]. The slack matches the
// PSD tolerance (eigenvalues are quarter-sums of these expressions).
template <typename Scalar>
bool is_physical_bell_diagonal(const Vector3<Scalar>& c,
                               Scalar tol = Scalar(4 * kPsdSlack)) {
  const Scalar lo = Scalar(-3) - tol;
  const Scalar hi = Scalar(1) + tol;
  const auto inside = [&](Scalar v) { return v >= lo && v <= hi; };
  if (!inside(c.sum())) return false;
  for (int i = 0; i < 3; ++i) {
    const Scalar v = Scalar(2) * c(i) - c.sum();  // c_i - c_j - c_k
    if (!inside(v)) return false;
  }
  return true;
}

// rho = (1/4)(1(x)1 + sum_i c_i s_i(x)s_i + d s_3(x)1 + d 1(x)s_3).
// Throws NotPhysical (with the offending eigenvalue) when the parameters do
// not describe a state.
template <typename Scalar>
DensityMatrix<Scalar> bell_diagonal(const Vector3<Scalar>& c, Scalar d = 0) {
  BlochForm<Scalar> b;
  b.x = Vector3<Scalar>(0, 0, d);
  b.y = Vector3<Scalar>(0, 0, d);
  b.R = c.asDiagonal();
  return from_bloch(b);
}

template <typename Scalar>
DensityMatrix<Scalar> bell_diagonal(const BellDiagonalParams<Scalar>& p) {
  return bell_diagonal(p.c, p.d);
}

}  // namespace qdlab
