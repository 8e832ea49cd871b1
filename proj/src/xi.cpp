#include "wn/xi.hpp"

#include <cmath>
#include <string>

namespace wn {

SingularChart::SingularChart(double det_value, Eigen::VectorXd gamma_value,
                             double time_value)
    : std::runtime_error("singular chart: |det Xi| = " + std::to_string(std::abs(det_value))),
      det(det_value),
      gamma(std::move(gamma_value)),
      time(time_value) {}

XiAssembler::XiAssembler(std::shared_ptr<const LieBasis> basis,
                         std::vector<int> order)
    : basis_(std::move(basis)), order_(std::move(order)) {
  if (!basis_) {
    throw std::invalid_argument("XiAssembler: null basis");
  }
  if (static_cast<int>(order_.size()) != basis_->dim()) {
    throw std::invalid_argument("XiAssembler: order length must equal the algebra dimension");
  }
  for (int j : order_) {
    if (j < 0 || j >= basis_->dim()) {
      throw std::invalid_argument("XiAssembler: order index out of range");
    }
  }
}

XiMatrix XiAssembler::assemble(const Eigen::VectorXd& gamma) const {
  const int n = basis_->dim();
  if (gamma.size() != n) {
    throw std::invalid_argument("XiAssembler::assemble: bad gamma length");
  }
  if (!gamma.allFinite()) {
    throw std::invalid_argument("XiAssembler::assemble: non-finite gamma");
  }

  XiMatrix xi;
  xi.m.resize(n, n);
  xi.gamma = gamma;

  // P carries prod_{j<i} exp(gamma_j ad_{rho(j)}); P e_k is just column k.
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  bool p_is_identity = true;
  for (int i = 0; i < n; ++i) {
    const int idx = order_[static_cast<size_t>(i)];
    if (p_is_identity) {
      xi.m.col(i).setZero();
      xi.m(idx, i) = 1.0;
    } else {
      xi.m.col(i) = p.col(idx);
    }
    if (i + 1 < n && gamma(i) != 0.0) {
      p = p * basis_->exp_adjoint(idx, gamma(i));
      p_is_identity = false;
    }
  }

  xi.det = Eigen::PartialPivLU<Eigen::MatrixXd>(xi.m).determinant();
  return xi;
}

XiMatrix assemble_xi(const GammaChart& chart) {
  chart.validate();
  return XiAssembler(chart.basis, chart.order).assemble(chart.gamma);
}

double xi_determinant(const XiMatrix& xi) { return xi.det; }

Eigen::VectorXd solve_gamma_dot(const XiMatrix& xi, const Eigen::VectorXd& rhs,
                                double eps_singular) {
  if (rhs.size() != xi.m.rows()) {
    throw std::invalid_argument("solve_gamma_dot: rhs length mismatch");
  }
  if (std::abs(xi.det) <= eps_singular) {
    throw SingularChart(xi.det, xi.gamma);
  }
  return Eigen::PartialPivLU<Eigen::MatrixXd>(xi.m).solve(rhs);
}

}  // namespace wn
