#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wn {

// One control coefficient u_j(t) on the schedule horizon. Piecewise-constant
// channels are evaluated left-continuously: the value on (b_i, b_{i+1}] is
// values[i], and u(b_0) = values[0]. Piecewise-linear channels interpolate
// the node values. Outside the breakpoint span the nearest end value holds.
class ControlChannel {
 public:
  ControlChannel() = default;  // identically zero

  static ControlChannel constant(double value);
  static ControlChannel piecewise_constant(std::vector<double> breakpoints,
                                           std::vector<double> values);
  static ControlChannel piecewise_linear(std::vector<double> breakpoints,
                                         std::vector<double> values);

  double eval(double t) const;
  bool is_zero() const { return kind_ == Kind::Zero; }

  // true when the channel is defined on all of [0, horizon]
  bool covers(double horizon) const;

  enum class Kind { Zero, Constant, PiecewiseConstant, PiecewiseLinear };
  Kind kind() const { return kind_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  Kind kind_ = Kind::Zero;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Drift coefficients a and control channels u of a generator
// G(t) = sum_j (a_j + u_j(t)) A_j on [0, horizon].
struct ControlSchedule {
  Eigen::VectorXd drift;                  // a, length n
  std::vector<ControlChannel> controls;   // length n (missing = zero)
  double horizon = 0.0;

  ControlSchedule() = default;
  ControlSchedule(Eigen::VectorXd a, std::vector<ControlChannel> u, double T);

  int dim() const { return static_cast<int>(drift.size()); }
  Eigen::VectorXd control_at(double t) const;  // u(t)
  Eigen::VectorXd eval(double t) const;        // a + u(t)

  // Throws std::invalid_argument on non-finite entries, horizon <= 0, or a
  // channel that does not cover [0, horizon].
  void validate() const;
};

}  // namespace wn
