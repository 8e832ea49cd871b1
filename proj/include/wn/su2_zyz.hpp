#pragma once

#include <Eigen/Dense>

#include "wn/control_schedule.hpp"
#include "wn/propagator.hpp"
#include "wn/xi.hpp"

namespace wn {
namespace zyz {

// ZYZ Euler angles on SU(2), each in (-2 pi, 2 pi]. The chart is singular
// exactly where sin(gamma_2) vanishes, i.e. gamma_2 in {-pi, 0, pi, 2 pi}.
struct ZyzAngles {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;

  bool singular(double eps = kDefaultEpsSingular) const;
  Eigen::Vector3d vec() const { return {g1, g2, g3}; }
};

// Closed-form exp(g1 A_3) exp(g2 A_2) exp(g3 A_3); identical to the generic
// product of exponentials with ordering (3,2,3).
UnitaryMatrix u_zyz(const ZyzAngles& a);
UnitaryMatrix u_zyz(double g1, double g2, double g3);

// Closed-form Xi and its inverse for the ZYZ ordering; det Xi = -sin(gamma_2),
// so the singular set is sin(gamma_2) = 0. xi_inv_zyz throws SingularChart
// on the singular set.
XiMatrix xi_zyz(const ZyzAngles& a);
Eigen::Matrix3d xi_inv_zyz(const ZyzAngles& a, double eps = kDefaultEpsSingular);

// Spin-1/2 in a field constant along Z and driven along X and Y:
// a = (0, 0, a3), u3 = 0.
ControlSchedule spin_half_model(double a3, ControlChannel u1, ControlChannel u2,
                                double horizon);

}  // namespace zyz
}  // namespace wn
