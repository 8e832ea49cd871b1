#pragma once

#include <Eigen/Dense>

namespace wn {

// Matrix exponential. Skew-Hermitian input goes through an eigendecomposition
// of the associated Hermitian matrix, which keeps the result unitary to
// machine precision; anything else falls back to Pade scaling-and-squaring.
// Throws std::invalid_argument on non-square or non-finite input.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);

// Real-input convenience wrapper; the imaginary part of the complex result is
// discarded (it is roundoff for real input).
Eigen::MatrixXd expm_real(const Eigen::MatrixXd& m);

bool is_skew_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

}  // namespace wn
