#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wn/control_schedule.hpp"
#include "wn/gamma_chart.hpp"
#include "wn/lie_basis.hpp"

namespace wn {

// Element of SU(N). validate() enforces unitarity and unit determinant.
struct UnitaryMatrix {
  Eigen::MatrixXcd m;

  double unitarity_defect() const;  // ||U^H U - I||_F
  double det_defect() const;        // |det U - 1|
  void validate(double tol = 1e-9) const;
};

// Unit vector in C^N; normalized on construction.
struct QuantumState {
  Eigen::VectorXcd v;

  QuantumState() = default;
  explicit QuantumState(Eigen::VectorXcd psi);
};

// Uniform time grid used by both integration routes.
struct TimeGrid {
  int steps;
  double h;
};
TimeGrid make_grid(double horizon, double step);

// Ordered product of one-parameter exponentials, leftmost factor first:
// pexp(gamma) = exp(gamma_1 A_{rho(1)}) ... exp(gamma_m A_{rho(m)}).
UnitaryMatrix pexp(const GammaChart& chart);

struct UnitaryTrajectory {
  std::vector<double> t;
  std::vector<Eigen::MatrixXcd> u;

  const Eigen::MatrixXcd& final_unitary() const { return u.back(); }
};

// Direct geometric integration of U' = G(t) U, U(0) = I, with
// G(t) = sum_j (a_j + u_j(t)) A_j, by the exponential midpoint rule
// U_{k+1} = exp(h G(t_k + h/2)) U_k. Unitary at every sample; second order
// accurate globally.
UnitaryTrajectory integrate_unitary(const LieBasis& basis,
                                    const ControlSchedule& schedule,
                                    double step);

QuantumState apply(const UnitaryMatrix& u, const QuantumState& psi);

// Global phase is unobservable; states compare through 1 - |<a|b>| and
// unitaries through 1 - |tr(U^H V)| / N.
double phase_insensitive_error(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
double phase_insensitive_unitary_error(const Eigen::MatrixXcd& u,
                                       const Eigen::MatrixXcd& v);

}  // namespace wn
