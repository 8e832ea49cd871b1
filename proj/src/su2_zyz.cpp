#include "wn/su2_zyz.hpp"

#include <cmath>
#include <complex>

namespace wn {
namespace zyz {

namespace {
constexpr std::complex<double> kI(0.0, 1.0);
}

bool ZyzAngles::singular(double eps) const { return std::abs(std::sin(g2)) <= eps; }

UnitaryMatrix u_zyz(const ZyzAngles& a) {
  const double c = std::cos(0.5 * a.g2);
  const double s = std::sin(0.5 * a.g2);
  const std::complex<double> ep = std::exp(0.5 * kI * (a.g1 + a.g3));
  const std::complex<double> em = std::exp(0.5 * kI * (a.g1 - a.g3));

  Eigen::Matrix2cd u;
  u << ep * c, -em * s,
       std::conj(em) * s, std::conj(ep) * c;
  return {u};
}

UnitaryMatrix u_zyz(double g1, double g2, double g3) {
  return u_zyz(ZyzAngles{g1, g2, g3});
}

XiMatrix xi_zyz(const ZyzAngles& a) {
  const double c1 = std::cos(a.g1);
  const double s1 = std::sin(a.g1);
  const double c2 = std::cos(a.g2);
  const double s2 = std::sin(a.g2);

  XiMatrix xi;
  xi.m.resize(3, 3);
  xi.m << 0.0, -s1, c1 * s2,
          0.0,  c1, s1 * s2,
          1.0, 0.0, c2;
  // cofactor expansion along the first column: det = -sin(gamma_2), so the
  // singular set is exactly sin(gamma_2) = 0
  xi.det = -s2;
  xi.gamma = a.vec();
  return xi;
}

Eigen::Matrix3d xi_inv_zyz(const ZyzAngles& a, double eps) {
  const double s2 = std::sin(a.g2);
  if (std::abs(s2) <= eps) {
    throw SingularChart(s2, a.vec());
  }
  const double c1 = std::cos(a.g1);
  const double s1 = std::sin(a.g1);
  const double cot2 = std::cos(a.g2) / s2;
  const double csc2 = 1.0 / s2;

  Eigen::Matrix3d inv;
  inv << -c1 * cot2, -s1 * cot2, 1.0,
         -s1,         c1,        0.0,
          c1 * csc2,  s1 * csc2, 0.0;
  return inv;
}

ControlSchedule spin_half_model(double a3, ControlChannel u1, ControlChannel u2,
                                double horizon) {
  Eigen::Vector3d a(0.0, 0.0, a3);
  std::vector<ControlChannel> u(3);
  u[0] = std::move(u1);
  u[1] = std::move(u2);
  // u[2] stays zero: no drive along the quantization axis
  ControlSchedule s(a, std::move(u), horizon);
  s.validate();
  return s;
}

}  // namespace zyz
}  // namespace wn
