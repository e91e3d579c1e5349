#pragma once

#include <complex>

#include <Eigen/Core>

namespace qdlab {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4c = Eigen::Matrix<Complex<Scalar>, 4, 4>;

template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Matrix34 = Eigen::Matrix<Scalar, 3, 4>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

}  // namespace qdlab
