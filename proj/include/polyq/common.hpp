#pragma once

#include <complex>

#include <Eigen/Dense>

namespace polyq {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Structural tolerances, sized for dense double-precision work on up to
// ~10 qubits. Validation sits at 1e-12, eigensolver reconstruction at 1e-10,
// strict-inequality verdicts at 1e-9.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEigRecTol = 1e-10;
inline constexpr double kStrictTol = 1e-9;
inline constexpr double kProbFloor = 1e-14;
inline constexpr double kFileNormTol = 1e-8;

}  // namespace polyq
