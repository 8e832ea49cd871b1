#include "wn/expm.hpp"

#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace wn {

bool is_skew_hermitian(const Eigen::MatrixXcd& m, double tol) {
  const double scale = std::max(1.0, m.norm());
  return (m + m.adjoint()).norm() < tol * scale;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("expm: non-finite entries");
  }
  if (m.isZero(0.0)) {
    return Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  }
  if (is_skew_hermitian(m)) {
    // m = iH with H Hermitian, so exp(m) = V diag(exp(i w)) V^H with real w.
    const std::complex<double> mi(0.0, -1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mi * m);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("expm: eigendecomposition failed");
    }
    const Eigen::VectorXd w = es.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      phases(k) = std::polar(1.0, w(k));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
  return m.exp();
}

Eigen::MatrixXd expm_real(const Eigen::MatrixXd& m) {
  return expm(m.cast<std::complex<double>>()).real();
}

}  // namespace wn
