#pragma once

#include <complex>

#include <Eigen/Dense>

namespace entrolab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Asymmetry beyond this (relative to max(1, |M|_max)) is rejected rather than
// symmetrized away.
inline constexpr double kHermitianTol = 1e-9;

// Floor applied to eigenvalues before log or negative powers. Reduced density
// matrices generically carry near-zero modes; flooring perturbs entropies by
// at most dim * floor * |log floor|.
inline constexpr double kEigenvalueFloor = 1e-12;

inline constexpr long kDefaultDimensionCap = 4096;

}  // namespace entrolab
