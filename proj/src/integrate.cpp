#include "wn/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "wn/propagator.hpp"

namespace wn {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

UnrecoverableSingularity::UnrecoverableSingularity(double time_value,
                                                   Eigen::VectorXd gamma_value,
                                                   const std::string& what_happened)
    : std::runtime_error("unrecoverable singularity at t = " +
                         std::to_string(time_value) + ": " + what_happened),
      time(time_value),
      gamma(std::move(gamma_value)) {}

Eigen::MatrixXcd GammaTrajectory::unitary_at(size_t i) const {
  const TrajectorySample& s = samples.at(i);
  const ChartSegment& seg = segments.at(static_cast<size_t>(s.segment));
  const GammaChart chart(basis, seg.order, s.gamma);
  return pexp(chart).m * seg.anchor;
}

Eigen::MatrixXcd GammaTrajectory::final_unitary() const {
  return unitary_at(samples.size() - 1);
}

namespace {

struct ReducedFrame {
  int p;        // repeated axis (chart slots 1 and 3)
  int q;        // middle axis
  int o;        // remaining basis index
  double sign;  // c_{pq}^o
};

ReducedFrame reduced_frame(const LieBasis& basis, const std::vector<int>& order) {
  ReducedFrame f;
  f.p = order[0];
  f.q = order[1];
  f.o = 3 - f.p - f.q;
  f.sign = basis.c(f.p, f.q, f.o);
  return f;
}

ReducedVelocity reduced_velocity_raw(const LieBasis& basis,
                                     const std::vector<int>& order,
                                     const Eigen::VectorXd& gamma,
                                     const Eigen::VectorXd& rhs) {
  const ReducedFrame f = reduced_frame(basis, order);
  const double g1 = gamma(0);
  const double vq = rhs(f.q);
  const double vo = rhs(f.o);

  ReducedVelocity rv;
  rv.pair_rate = rhs(f.p);
  rv.gamma2_rate = std::cos(g1) * vq + f.sign * std::sin(g1) * vo;
  rv.inconsistency = std::abs(-f.sign * std::sin(g1) * vq + std::cos(g1) * vo);
  rv.gamma_dot = Eigen::Vector3d(0.0, rv.gamma2_rate, rv.pair_rate);
  return rv;
}

}  // namespace

ReducedVelocity reduced_velocity(const GammaChart& chart, const Eigen::VectorXd& rhs,
                                 double eps_on_slice) {
  chart.validate();
  if (chart.basis->dim_rep() != 2 || !is_repeated_pair_order(chart.order)) {
    throw std::invalid_argument(
        "reduced_velocity: supported only for su(2) repeated-axis (p,q,p) charts");
  }
  if (rhs.size() != 3) {
    throw std::invalid_argument("reduced_velocity: rhs must have length 3");
  }
  const double g2 = chart.gamma(1);
  if (std::abs(std::sin(g2)) > eps_on_slice || std::cos(g2) < 0.0) {
    throw std::domain_error(
        "reduced_velocity: point is not on a supported singular slice; "
        "use the chart-switch policy instead");
  }
  return reduced_velocity_raw(*chart.basis, chart.order, chart.gamma, rhs);
}

namespace {

class Integrator {
 public:
  Integrator(const GammaChart& start, const ControlSchedule& schedule,
             const IntegrateOptions& opts)
      : basis_(start.basis),
        schedule_(schedule),
        opts_(opts),
        order_(start.order),
        assembler_(basis_, order_),
        gamma_(start.gamma) {
    traj_.basis = basis_;
    traj_.segments.push_back(
        {order_, Eigen::MatrixXcd::Identity(basis_->dim_rep(), basis_->dim_rep())});
  }

  GammaTrajectory run() {
    const TimeGrid grid = make_grid(schedule_.horizon, opts_.step);
    std::vector<double> forced = opts_.forced_reanchor_times;
    std::sort(forced.begin(), forced.end());
    size_t next_forced = 0;

    record_sample(0.0);
    for (int k = 0; k < grid.steps; ++k) {
      const double t = k * grid.h;
      while (next_forced < forced.size() && forced[next_forced] <= t + 0.5 * grid.h) {
        reanchor(t, fresh_order(), "forced_reanchor");
        ++next_forced;
      }
      advance(t, grid.h, 0);
      record_sample((k + 1) * grid.h);
    }
    return std::move(traj_);
  }

 private:
  Eigen::VectorXd rhs(double t) const {
    return schedule_.eval(std::clamp(t, 0.0, schedule_.horizon));
  }

  double defect_tol(double h) const {
    return opts_.defect_tol > 0.0 ? opts_.defect_tol : 10.0 * h * h;
  }

  void note_det(double det) {
    traj_.min_abs_det = std::min(traj_.min_abs_det, std::abs(det));
  }

  bool reduced_capable() const {
    return basis_->dim_rep() == 2 && is_repeated_pair_order(order_);
  }

  // On the supported slice the reduced formulas need cos(gamma_2) = +1; odd
  // slices are left to the chart-switch policy.
  bool on_even_slice() const {
    return std::cos(gamma_(1)) > 0.0;
  }

  std::vector<int> fresh_order() const {
    return opts_.reanchor_order.empty() ? canonical_order(basis_->dim())
                                        : opts_.reanchor_order;
  }

  void record_sample(double t) {
    const XiMatrix xi = assembler_.assemble(gamma_);
    note_det(xi.det);
    traj_.samples.push_back(
        {t, gamma_, xi.det, static_cast<int>(traj_.segments.size()) - 1});
  }

  void reanchor(double t, std::vector<int> new_order, const std::string& reason) {
    const GammaChart here(basis_, order_, gamma_);
    const Eigen::MatrixXcd anchor_new =
        pexp(here).m * traj_.segments.back().anchor;
    traj_.events.push_back({t, order_, new_order, reason});
    order_ = std::move(new_order);
    assembler_ = XiAssembler(basis_, order_);
    gamma_.setZero();
    traj_.segments.push_back({order_, anchor_new});
  }

  bool order_usable_at_origin(const std::vector<int>& cand, double t) const {
    XiAssembler a(basis_, cand);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(basis_->dim());
    const XiMatrix xi = a.assemble(zero);
    if (std::abs(xi.det) > opts_.eps_singular) return true;
    if (basis_->dim_rep() == 2 && is_repeated_pair_order(cand)) {
      const ReducedVelocity rv =
          reduced_velocity_raw(*basis_, cand, zero, rhs(t));
      return rv.inconsistency <= opts_.consistency_tol;
    }
    return false;
  }

  void engage_policy(double t, const std::string& reason) {
    if (t == last_policy_time_) {
      if (++policy_hits_ > 3) {
        throw UnrecoverableSingularity(t, gamma_, reason + " (no progress)");
      }
    } else {
      last_policy_time_ = t;
      policy_hits_ = 1;
    }
    switch (opts_.policy) {
      case ChartSwitchPolicy::Error:
        throw UnrecoverableSingularity(t, gamma_, reason);
      case ChartSwitchPolicy::ReAnchor: {
        std::vector<int> next = fresh_order();
        if (gamma_.isZero(0.0) && next == order_) {
          throw UnrecoverableSingularity(
              t, gamma_, reason + " (re-anchor target equals the stuck chart)");
        }
        reanchor(t, std::move(next), reason + ":reanchor");
        return;
      }
      case ChartSwitchPolicy::SwitchOrder: {
        for (const auto& cand : opts_.alternate_orders) {
          if (cand == order_ && gamma_.isZero(0.0)) continue;
          if (order_usable_at_origin(cand, t)) {
            reanchor(t, cand, reason + ":switch_order");
            return;
          }
        }
        throw UnrecoverableSingularity(
            t, gamma_, reason + " (all candidate charts singular)");
      }
    }
  }

  Eigen::VectorXd full_field(double t, const Eigen::VectorXd& g) {
    const XiMatrix xi = assembler_.assemble(g);
    note_det(xi.det);
    return solve_gamma_dot(xi, rhs(t), opts_.eps_singular);
  }

  template <typename Field>
  Eigen::VectorXd rk4(double t, double h, const Eigen::VectorXd& g, Field&& f) {
    const Eigen::VectorXd k1 = f(t, g);
    const Eigen::VectorXd k2 = f(t + 0.5 * h, g + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * h, g + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(t + h, g + h * k3);
    return g + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  // Returns false on a defect violation (step rejected, gamma untouched);
  // throws SingularChart if a stage hits the singular threshold.
  bool try_full_step(double t, double h) {
    const Eigen::VectorXd gnew =
        rk4(t, h, gamma_, [this](double tt, const Eigen::VectorXd& g) {
          return full_field(tt, g);
        });
    if (!gnew.allFinite()) {
      throw UnrecoverableSingularity(t, gamma_, "non-finite state");
    }
    const Eigen::VectorXd gmid = 0.5 * (gamma_ + gnew);
    const XiMatrix xim = assembler_.assemble(gmid);
    note_det(xim.det);
    const double defect = (xim.m * ((gnew - gamma_) / h) - rhs(t + 0.5 * h)).norm();
    if (defect > defect_tol(h)) {
      return false;
    }
    gamma_ = gnew;
    return true;
  }

  void reduced_step(double t, double h) {
    gamma_ = rk4(t, h, gamma_, [this](double tt, const Eigen::VectorXd& g) {
      const ReducedVelocity rv = reduced_velocity_raw(*basis_, order_, g, rhs(tt));
      return Eigen::VectorXd(rv.gamma_dot);
    });
  }

  void post_step(double t_end) {
    for (Eigen::Index k = 0; k < gamma_.size(); ++k) {
      if (gamma_(k) > kTwoPi || gamma_(k) <= -kTwoPi) {
        if (basis_->periodic_4pi(order_[static_cast<size_t>(k)])) {
          gamma_(k) = wrap_angle(gamma_(k));
        } else {
          reanchor(t_end, fresh_order(), "principal_cube_exit");
          return;
        }
      }
    }
  }

  void advance(double t, double h, int depth) {
    const XiMatrix xi = assembler_.assemble(gamma_);
    note_det(xi.det);

    if (std::abs(xi.det) <= opts_.eps_singular) {
      if (reduced_capable() && on_even_slice()) {
        const ReducedVelocity rv =
            reduced_velocity_raw(*basis_, order_, gamma_, rhs(t));
        if (rv.inconsistency <= opts_.consistency_tol) {
          if (std::abs(rv.gamma2_rate) < 1e-14) {
            // pinned to the slice: the reduced dynamics is the whole motion
            reduced_step(t, h);
            post_step(t + h);
            return;
          }
          const double hop = opts_.hop_scale / std::abs(rv.gamma2_rate);
          if (hop >= h) {
            reduced_step(t, h);
            post_step(t + h);
            return;
          }
          reduced_step(t, hop);
          advance(t + hop, h - hop, depth);
          return;
        }
        engage_policy(t, "inconsistent_on_singular_slice");
        advance(t, h, depth);
        return;
      }
      engage_policy(t, "singular_chart_point");
      advance(t, h, depth);
      return;
    }

    try {
      if (try_full_step(t, h)) {
        post_step(t + h);
        return;
      }
      if (depth < opts_.max_halvings) {
        advance(t, 0.5 * h, depth + 1);
        advance(t + 0.5 * h, 0.5 * h, depth + 1);
        return;
      }
      engage_policy(t, "defect_unresolvable");
      advance(t, h, depth);
    } catch (const SingularChart&) {
      if (depth < opts_.max_halvings) {
        advance(t, 0.5 * h, depth + 1);
        advance(t + 0.5 * h, 0.5 * h, depth + 1);
        return;
      }
      engage_policy(t, "singular_approach");
      advance(t, h, depth);
    }
  }

  std::shared_ptr<const LieBasis> basis_;
  const ControlSchedule& schedule_;
  IntegrateOptions opts_;
  std::vector<int> order_;
  XiAssembler assembler_;
  Eigen::VectorXd gamma_;
  GammaTrajectory traj_;
  double last_policy_time_ = std::numeric_limits<double>::quiet_NaN();
  int policy_hits_ = 0;
};

}  // namespace

GammaTrajectory integrate_gamma(const GammaChart& start,
                                const ControlSchedule& schedule,
                                const IntegrateOptions& opts) {
  start.validate();
  schedule.validate();
  if (!(opts.step > 0.0)) {
    throw std::invalid_argument("integrate_gamma: step must be positive");
  }
  if (schedule.dim() != start.basis->dim()) {
    throw std::invalid_argument("integrate_gamma: schedule dimension mismatch");
  }
  if (static_cast<int>(start.order.size()) != start.basis->dim()) {
    throw std::invalid_argument("integrate_gamma: chart order must be full length");
  }
  Integrator integ(start, schedule, opts);
  return integ.run();
}

}  // namespace wn
