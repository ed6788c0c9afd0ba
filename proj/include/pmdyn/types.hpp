#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pmdyn {

using Complex = std::complex<double>;

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix4d = Eigen::Matrix4d;
using Vector4d = Eigen::Vector4d;
using Vector4c = Eigen::Vector4cd;

// Superoperators act on row-major vectorized 4x4 matrices: vec(rho)[4*i+j] = rho(i,j).
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

}  // namespace pmdyn
