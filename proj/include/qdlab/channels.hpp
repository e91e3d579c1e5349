#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdlab/errors.hpp"
#include "qdlab/pauli.hpp"
#include "qdlab/states.hpp"
#include "qdlab/types.hpp"

// Single-qubit decoherence channels as Kraus sets, plus their Heisenberg
// transmission matrices. A channel K maps rho -> sum_u K_u rho K_u^dag;
// its transmission matrix M_ij = (1/2) Tr[ E^dag(s_i) s_j ] propagates
// Pauli expectation values as E = M_A E_0 M_B^T.

namespace qdlab {

// Heisenberg-picture 4x4 map of Pauli expectations. Row 0 = (1,0,0,0);
// unital channels also carry column 0 = (1,0,0,0)^T.
template <typename Scalar>
using TransmissionMatrix = Matrix4<Scalar>;

template <typename Scalar>
class KrausChannel {
 public:
  using Operator = Matrix2c<Scalar>;

  // Builds a channel from an arbitrary Kraus set; completeness
  // sum_u K_u^dag K_u = 1 is required within `tol`.
  explicit KrausChannel(std::vector<Operator> ops,
                        Scalar tol = Scalar(1e-10),
                        std::optional<Scalar> strength = std::nullopt)
      : ops_(std::move(ops)), strength_(strength) {
    Operator sum = Operator::Zero();
    for (const auto& k : ops_) sum += k.adjoint() * k;
    const Scalar defect = (sum - Operator::Identity()).cwiseAbs().maxCoeff();
    if (defect > tol) {
      std::ostringstream msg;
      msg << "Kraus set is not trace preserving: |sum K^dag K - 1| = "
          << defect;
      throw DomainError(msg.str());
    }
  }

  const std::vector<Operator>& operators() const { return ops_; }

  // Channel strength p for the built-in families; empty for custom sets.
  std::optional<Scalar> strength() const { return strength_; }

 private:
  std::vector<Operator> ops_;
  std::optional<Scalar> strength_;
};

namespace detail {
template <typename Scalar>
void require_strength(Scalar p, const char* name) {
  if (!(p >= Scalar(0) && p <= Scalar(1))) {
    std::ostringstream msg;
    msg << name << ": channel strength p = " << p << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}
}  // namespace detail

// Amplitude damping: { sqrt(s)|0><0| + |1><1|,  sqrt(p)|1><0| },  s = 1-p.
template <typename Scalar>
KrausChannel<Scalar> adc(Scalar p) {
  detail::require_strength(p, "adc");
  const Scalar s = Scalar(1) - p;
  using C = Complex<Scalar>;
  Matrix2c<Scalar> k0, k1;
  k0 << C(std::sqrt(s), 0), C(0, 0), C(0, 0), C(1, 0);
  k1 << C(0, 0), C(0, 0), C(std::sqrt(p), 0), C(0, 0);
  return KrausChannel<Scalar>({k0, k1}, Scalar(1e-12), p);
}

// Phase damping: { sqrt(s) 1,  sqrt(p)|0><0|,  sqrt(p)|1><1| }.
template <typename Scalar>
KrausChannel<Scalar> pdc(Scalar p) {
  detail::require_strength(p, "pdc");
  const Scalar s = Scalar(1) - p;
  using C = Complex<Scalar>;
  Matrix2c<Scalar> k0 = std::sqrt(s) * Matrix2c<Scalar>::Identity();
  Matrix2c<Scalar> k1, k2;
  k1 << C(std::sqrt(p), 0), C(0, 0), C(0, 0), C(0, 0);
  k2 << C(0, 0), C(0, 0), C(0, 0), C(std::sqrt(p), 0);
  return KrausChannel<Scalar>({k0, k1, k2}, Scalar(1e-12), p);
}

// Depolarizing: { (1/2)sqrt(1+3s) 1, (1/2)sqrt(p) s_x, (1/2)sqrt(p) s_y,
// (1/2)sqrt(p) s_z }.
template <typename Scalar>
KrausChannel<Scalar> dpc(Scalar p) {
  detail::require_strength(p, "dpc");
  const Scalar s = Scalar(1) - p;
  std::vector<Matrix2c<Scalar>> ops;
  ops.push_back(Scalar(0.5) * std::sqrt(Scalar(1) + 3 * s) *
                pauli<Scalar>(0));
  for (int i = 1; i <= 3; ++i)
    ops.push_back(Scalar(0.5) * std::sqrt(p) * pauli<Scalar>(i));
  return KrausChannel<Scalar>(std::move(ops), Scalar(1e-12), p);
}

template <typename Scalar>
KrausChannel<Scalar> make_channel(std::string_view name, Scalar p) {
  if (name == "adc") return adc(p);
  if (name == "pdc") return pdc(p);
  if (name == "dpc") return dpc(p);
  throw DomainError("unknown channel '" + std::string(name) +
                    "' (expected adc, pdc, or dpc)");
}

// Schroedinger-picture action on a single qubit.
template <typename Scalar>
Matrix2c<Scalar> apply(const KrausChannel<Scalar>& ch,
                       const Matrix2c<Scalar>& rho) {
  Matrix2c<Scalar> out = Matrix2c<Scalar>::Zero();
  for (const auto& k : ch.operators()) out += k * rho * k.adjoint();
  return out;
}

// Channel composition ch2 after ch1 (Kraus products K2_i K1_j).
template <typename Scalar>
KrausChannel<Scalar> compose(const KrausChannel<Scalar>& ch2,
                             const KrausChannel<Scalar>& ch1) {
  std::vector<Matrix2c<Scalar>> ops;
  ops.reserve(ch2.operators().size() * ch1.operators().size());
  for (const auto& k2 : ch2.operators())
    for (const auto& k1 : ch1.operators()) ops.push_back(k2 * k1);
  return KrausChannel<Scalar>(std::move(ops));
}

// M_ij = (1/2) Tr[ sum_u K_u^dag s_i K_u s_j ].
template <typename Scalar>
TransmissionMatrix<Scalar> transmission_matrix(const KrausChannel<Scalar>& ch) {
  TransmissionMatrix<Scalar> m;
  for (int i = 0; i < 4; ++i) {
    Matrix2c<Scalar> heis = Matrix2c<Scalar>::Zero();
    for (const auto& k : ch.operators())
      heis += k.adjoint() * pauli<Scalar>(i) * k;
    for (int j = 0; j < 4; ++j)
      m(i, j) = Scalar(0.5) * (heis * pauli<Scalar>(j)).trace().real();
  }
  return m;
}

// [E_A (x) E_B](rho) = sum_uv (K_u (x) K_v) rho (K_u (x) K_v)^dag.
template <typename Scalar>
DensityMatrix<Scalar> apply_local(const KrausChannel<Scalar>& cha,
                                  const KrausChannel<Scalar>& chb,
                                  const DensityMatrix<Scalar>& rho) {
  Matrix4c<Scalar> out = Matrix4c<Scalar>::Zero();
  for (const auto& ka : cha.operators())
    for (const auto& kb : chb.operators()) {
      const Matrix4c<Scalar> k = kron(ka, kb);
      out += k * rho.matrix() * k.adjoint();
    }
  return DensityMatrix<Scalar>(out);
}

// Heisenberg-picture update of the expectation matrix: M_A E_0 M_B^T.
template <typename Scalar>
ExpectationMatrix<Scalar> evolve_expectation(
    const TransmissionMatrix<Scalar>& ma, const ExpectationMatrix<Scalar>& e0,
    const TransmissionMatrix<Scalar>& mb) {
  return ma * e0 * mb.transpose();
}

}  // namespace qdlab
