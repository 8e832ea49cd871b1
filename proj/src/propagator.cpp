#include "wn/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "wn/expm.hpp"

namespace wn {

double UnitaryMatrix::unitarity_defect() const {
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm();
}

double UnitaryMatrix::det_defect() const {
  return std::abs(m.determinant() - std::complex<double>(1.0, 0.0));
}

void UnitaryMatrix::validate(double tol) const {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("UnitaryMatrix: not square");
  }
  if (unitarity_defect() > tol || det_defect() > tol) {
    throw std::runtime_error("UnitaryMatrix: not special unitary within tolerance");
  }
}

QuantumState::QuantumState(Eigen::VectorXcd psi) : v(std::move(psi)) {
  if (!v.allFinite()) {
    throw std::invalid_argument("QuantumState: non-finite entries");
  }
  const double n = v.norm();
  if (n < 1e-300) {
    throw std::invalid_argument("QuantumState: zero vector");
  }
  v /= n;
}

TimeGrid make_grid(double horizon, double step) {
  if (!(step > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("make_grid: horizon and step must be positive");
  }
  const int steps = std::max(1, static_cast<int>(std::llround(horizon / step)));
  return {steps, horizon / steps};
}

UnitaryMatrix pexp(const GammaChart& chart) {
  chart.validate();
  const int N = chart.basis->dim_rep();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(N, N);
  for (size_t k = 0; k < chart.order.size(); ++k) {
    const double g = chart.gamma(static_cast<Eigen::Index>(k));
    if (g != 0.0) {
      u = u * chart.basis->exp_element(chart.order[k], g);
    }
  }
  return {u};
}

UnitaryTrajectory integrate_unitary(const LieBasis& basis,
                                    const ControlSchedule& schedule,
                                    double step) {
  schedule.validate();
  if (schedule.dim() != basis.dim()) {
    throw std::invalid_argument("integrate_unitary: schedule dimension mismatch");
  }
  const TimeGrid grid = make_grid(schedule.horizon, step);

  UnitaryTrajectory traj;
  traj.t.reserve(static_cast<size_t>(grid.steps) + 1);
  traj.u.reserve(static_cast<size_t>(grid.steps) + 1);

  const int N = basis.dim_rep();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(N, N);
  traj.t.push_back(0.0);
  traj.u.push_back(u);

  for (int k = 0; k < grid.steps; ++k) {
    const double tmid = (k + 0.5) * grid.h;
    const Eigen::MatrixXcd g = basis.from_coordinates(schedule.eval(tmid));
    u = expm(grid.h * g) * u;
    traj.t.push_back((k + 1) * grid.h);
    traj.u.push_back(u);
  }
  return traj;
}

QuantumState apply(const UnitaryMatrix& u, const QuantumState& psi) {
  if (u.m.cols() != psi.v.size()) {
    throw std::invalid_argument("apply: dimension mismatch");
  }
  return QuantumState(u.m * psi.v);
}

double phase_insensitive_error(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("phase_insensitive_error: dimension mismatch");
  }
  return std::max(0.0, 1.0 - std::abs(a.dot(b)));
}

double phase_insensitive_unitary_error(const Eigen::MatrixXcd& u,
                                       const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("phase_insensitive_unitary_error: shape mismatch");
  }
  return std::max(0.0, 1.0 - std::abs((u.adjoint() * v).trace()) /
                           static_cast<double>(u.rows()));
}

}  // namespace wn
