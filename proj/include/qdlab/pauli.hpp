#pragma once

#include <Eigen/Core>

#include "qdlab/types.hpp"

// Two-qubit algebra helpers shared across the library. Convention:
// sigma3 |0> = |0>, basis order |00>, |01>, |10>, |11| (first qubit = A).

namespace qdlab {

// sigma_i for i = 0..3 with sigma_0 the identity.
template <typename Scalar>
Matrix2c<Scalar> pauli(int i) {
  using C = Complex<Scalar>;
  Matrix2c<Scalar> m;
  switch (i) {
    case 0: m << C(1, 0), C(0, 0), C(0, 0), C(1, 0); break;
    case 1: m << C(0, 0), C(1, 0), C(1, 0), C(0, 0); break;
    case 2: m << C(0, 0), C(0, -1), C(0, 1), C(0, 0); break;
    case 3: m << C(1, 0), C(0, 0), C(0, 0), C(-1, 0); break;
    default: m.setZero(); break;
  }
  return m;
}

template <typename Scalar>
Matrix4c<Scalar> kron(const Matrix2c<Scalar>& a, const Matrix2c<Scalar>& b) {
  Matrix4c<Scalar> out;
  out.template block<2, 2>(0, 0) = a(0, 0) * b;
  out.template block<2, 2>(0, 2) = a(0, 1) * b;
  out.template block<2, 2>(2, 0) = a(1, 0) * b;
  out.template block<2, 2>(2, 2) = a(1, 1) * b;
  return out;
}

// sigma_i (x) sigma_j.
template <typename Scalar>
Matrix4c<Scalar> pauli_pair(int i, int j) {
  return kron<Scalar>(pauli<Scalar>(i), pauli<Scalar>(j));
}

// Partial trace over qubit B: rho_A(a,a') = sum_b rho(ab, a'b).
template <typename Scalar>
Matrix2c<Scalar> trace_out_b(const Matrix4c<Scalar>& rho) {
  Matrix2c<Scalar> out;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      out(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
  return out;
}

// Partial trace over qubit A: rho_B(b,b') = sum_a rho(ab, ab').
template <typename Scalar>
Matrix2c<Scalar> trace_out_a(const Matrix4c<Scalar>& rho) {
  Matrix2c<Scalar> out;
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
  return out;
}

// Exchange the two qubits: |ab> -> |ba> on both indices.
template <typename Scalar>
Matrix4c<Scalar> swap_qubits(const Matrix4c<Scalar>& rho) {
  constexpr int perm[4] = {0, 2, 1, 3};
  Matrix4c<Scalar> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = rho(perm[r], perm[c]);
  return out;
}

}  // namespace qdlab
