#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wn/control_schedule.hpp"
#include "wn/gamma_chart.hpp"
#include "wn/lie_basis.hpp"
#include "wn/xi.hpp"

namespace wn {

// What to do when the coordinate ODE runs into the singular locus.
//  ReAnchor    freeze the current group element and restart a fresh chart at
//              gamma = 0 (fresh ordering defaults to canonical, where
//              Xi(0) = I)
//  SwitchOrder re-anchor into the first usable ordering from
//              alternate_orders; unrecoverable if all candidates are
//              singular and inconsistent
//  Error       raise UnrecoverableSingularity immediately
enum class ChartSwitchPolicy { ReAnchor, SwitchOrder, Error };

struct IntegrateOptions {
  double step = 1e-3;
  double eps_singular = kDefaultEpsSingular;
  // Midpoint finite-difference defect bound per accepted step; <= 0 selects
  // the step-scaled default 10 * h^2.
  double defect_tol = -1.0;
  // Bound on the unresolvable component of the on-slice reduced system.
  double consistency_tol = 1e-8;
  ChartSwitchPolicy policy = ChartSwitchPolicy::ReAnchor;
  std::vector<std::vector<int>> alternate_orders;
  std::vector<int> reanchor_order;  // empty = canonical
  std::vector<double> forced_reanchor_times;
  int max_halvings = 8;
  // Target magnitude of the transverse coordinate when hopping off the
  // singular slice before handing over to the full dynamics.
  double hop_scale = 1e-4;
};

class UnrecoverableSingularity : public std::runtime_error {
 public:
  UnrecoverableSingularity(double time_value, Eigen::VectorXd gamma_value,
                           const std::string& what_happened);

  double time;
  Eigen::VectorXd gamma;
};

struct ChartEvent {
  double time;
  std::vector<int> from_order;
  std::vector<int> to_order;
  std::string reason;
};

struct ChartSegment {
  std::vector<int> order;
  Eigen::MatrixXcd anchor;  // U(t) = pexp(gamma(t)) * anchor within the segment
};

struct TrajectorySample {
  double time;
  Eigen::VectorXd gamma;
  double det_xi;
  int segment;
};

struct GammaTrajectory {
  std::shared_ptr<const LieBasis> basis;
  std::vector<ChartSegment> segments;
  std::vector<TrajectorySample> samples;
  std::vector<ChartEvent> events;
  double min_abs_det = std::numeric_limits<double>::infinity();

  Eigen::MatrixXcd unitary_at(size_t i) const;
  Eigen::MatrixXcd final_unitary() const;
  const TrajectorySample& final_sample() const { return samples.back(); }
};

// Gauge-fixed velocity of the rank-2 dynamics on the singular slice
// gamma_2 = 0 (or +-2 pi) of an su(2) repeated-axis chart (p, q, p):
//   d(gamma_1 + gamma_3)/dt = v_p
//   d gamma_2 / dt          = cos(gamma_1) v_q + s sin(gamma_1) v_o
// with s = c_{pq}^o and the gauge convention gamma_1' = 0. For the ZYZ
// ordering these are exactly the textbook on-slice equations. The
// inconsistency field is the magnitude of the rhs component outside the
// range of Xi; when it exceeds tolerance the slice cannot carry the motion
// and a chart switch is required.
struct ReducedVelocity {
  Eigen::Vector3d gamma_dot;
  double pair_rate;
  double gamma2_rate;
  double inconsistency;
};

// Throws std::invalid_argument for charts outside the su(2) (p,q,p) family
// and std::domain_error when the point is not on a supported slice
// (|sin gamma_2| must be <= eps_on_slice with cos gamma_2 > 0).
ReducedVelocity reduced_velocity(const GammaChart& chart,
                                 const Eigen::VectorXd& rhs,
                                 double eps_on_slice = kDefaultEpsSingular);

// Fixed-step fourth-order integration of Xi(gamma) gamma' = a + u(t) from
// the chart's start point, with per-step defect control, principal-cube
// wrapping along periodic directions, and the configured singular-locus
// policy. Samples are recorded on the uniform grid.
GammaTrajectory integrate_gamma(const GammaChart& start,
                                const ControlSchedule& schedule,
                                const IntegrateOptions& opts);

}  // namespace wn
