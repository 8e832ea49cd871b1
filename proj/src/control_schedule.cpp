#include "wn/control_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wn {

namespace {

void check_breakpoints(const std::vector<double>& b) {
  if (b.size() < 2) {
    throw std::invalid_argument("ControlChannel: need at least two breakpoints");
  }
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    if (!(b[i] < b[i + 1])) {
      throw std::invalid_argument("ControlChannel: breakpoints must increase strictly");
    }
  }
  for (double x : b) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("ControlChannel: non-finite breakpoint");
    }
  }
}

void check_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("ControlChannel: non-finite value");
    }
  }
}

}  // namespace

ControlChannel ControlChannel::constant(double value) {
  ControlChannel c;
  c.kind_ = Kind::Constant;
  c.values_ = {value};
  check_finite(c.values_);
  return c;
}

ControlChannel ControlChannel::piecewise_constant(std::vector<double> breakpoints,
                                                  std::vector<double> values) {
  check_breakpoints(breakpoints);
  check_finite(values);
  if (values.size() + 1 != breakpoints.size()) {
    throw std::invalid_argument(
        "ControlChannel: piecewise-constant needs one value per interval");
  }
  ControlChannel c;
  c.kind_ = Kind::PiecewiseConstant;
  c.breakpoints_ = std::move(breakpoints);
  c.values_ = std::move(values);
  return c;
}

ControlChannel ControlChannel::piecewise_linear(std::vector<double> breakpoints,
                                                std::vector<double> values) {
  check_breakpoints(breakpoints);
  check_finite(values);
  if (values.size() != breakpoints.size()) {
    throw std::invalid_argument(
        "ControlChannel: piecewise-linear needs one value per breakpoint");
  }
  ControlChannel c;
  c.kind_ = Kind::PiecewiseLinear;
  c.breakpoints_ = std::move(breakpoints);
  c.values_ = std::move(values);
  return c;
}

double ControlChannel::eval(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return values_[0];
    case Kind::PiecewiseConstant: {
      if (t <= breakpoints_.front()) return values_.front();
      if (t >= breakpoints_.back()) return values_.back();
      // left-continuous: value on (b_i, b_{i+1}] is values[i]
      const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
      const size_t hi = static_cast<size_t>(it - breakpoints_.begin());
      return values_[hi - 1];
    }
    case Kind::PiecewiseLinear: {
      if (t <= breakpoints_.front()) return values_.front();
      if (t >= breakpoints_.back()) return values_.back();
      const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
      const size_t hi = static_cast<size_t>(it - breakpoints_.begin());
      const double t0 = breakpoints_[hi - 1];
      const double t1 = breakpoints_[hi];
      const double w = (t - t0) / (t1 - t0);
      return (1.0 - w) * values_[hi - 1] + w * values_[hi];
    }
  }
  return 0.0;
}

bool ControlChannel::covers(double horizon) const {
  if (kind_ == Kind::Zero || kind_ == Kind::Constant) return true;
  return breakpoints_.front() <= 0.0 && breakpoints_.back() >= horizon;
}

ControlSchedule::ControlSchedule(Eigen::VectorXd a, std::vector<ControlChannel> u,
                                 double T)
    : drift(std::move(a)), controls(std::move(u)), horizon(T) {
  controls.resize(static_cast<size_t>(drift.size()));
}

Eigen::VectorXd ControlSchedule::control_at(double t) const {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(drift.size());
  for (size_t j = 0; j < controls.size(); ++j) {
    u(static_cast<Eigen::Index>(j)) = controls[j].eval(t);
  }
  return u;
}

Eigen::VectorXd ControlSchedule::eval(double t) const {
  return drift + control_at(t);
}

void ControlSchedule::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("ControlSchedule: horizon must be positive");
  }
  if (!drift.allFinite()) {
    throw std::invalid_argument("ControlSchedule: non-finite drift");
  }
  if (controls.size() != static_cast<size_t>(drift.size())) {
    throw std::invalid_argument("ControlSchedule: channel count mismatch");
  }
  for (const auto& ch : controls) {
    if (!ch.covers(horizon)) {
      throw std::invalid_argument("ControlSchedule: channel does not cover [0, T]");
    }
  }
}

}  // namespace wn
