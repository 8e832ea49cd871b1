#pragma once

#include <Eigen/Dense>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wn/gamma_chart.hpp"
#include "wn/lie_basis.hpp"

namespace wn {

inline constexpr double kDefaultEpsSingular = 1e-6;

// The coordinate-velocity matrix Xi evaluated at one chart point, with its
// determinant (LU) cached alongside the evaluation point.
struct XiMatrix {
  Eigen::MatrixXd m;
  double det = 0.0;
  Eigen::VectorXd gamma;
};

// Raised when the chart is within eps_singular of its singular locus; the
// caller must switch charts or fall back to the reduced on-slice dynamics.
class SingularChart : public std::runtime_error {
 public:
  SingularChart(double det_value, Eigen::VectorXd gamma_value,
                double time_value = std::numeric_limits<double>::quiet_NaN());

  double det;
  Eigen::VectorXd gamma;
  double time;
};

// Assembles Xi for a fixed basis and ordering. Column i holds the basis
// coordinates of (prod_{j<i} exp(gamma_j ad_{rho(j)})) A_{rho(i)}, the
// empty product being the identity, so Xi(0) has columns e_{rho(i)}.
class XiAssembler {
 public:
  XiAssembler(std::shared_ptr<const LieBasis> basis, std::vector<int> order);

  XiMatrix assemble(const Eigen::VectorXd& gamma) const;

  const std::vector<int>& order() const { return order_; }
  const LieBasis& basis() const { return *basis_; }

 private:
  std::shared_ptr<const LieBasis> basis_;
  std::vector<int> order_;
};

XiMatrix assemble_xi(const GammaChart& chart);
double xi_determinant(const XiMatrix& xi);

// Solves Xi * gamma_dot = rhs; throws SingularChart when |det Xi| is at or
// below eps_singular.
Eigen::VectorXd solve_gamma_dot(const XiMatrix& xi, const Eigen::VectorXd& rhs,
                                double eps_singular = kDefaultEpsSingular);

}  // namespace wn
