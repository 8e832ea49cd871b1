#include "wn/gamma_chart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wn {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
}  // namespace

std::vector<int> canonical_order(int n) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    order[static_cast<size_t>(k)] = k;
  }
  return order;
}

std::vector<int> zyz_order() { return {2, 1, 2}; }

bool is_repeated_pair_order(const std::vector<int>& order) {
  return order.size() == 3 && order[0] == order[2] && order[0] != order[1];
}

double wrap_angle(double x) {
  double w = x - kFourPi * std::round(x / kFourPi);
  if (w <= -kTwoPi) w += kFourPi;
  if (w > kTwoPi) w -= kFourPi;
  return w;
}

Eigen::VectorXd wrap_gamma(const Eigen::VectorXd& gamma) {
  if (!gamma.allFinite()) {
    throw std::invalid_argument("wrap_gamma: non-finite input");
  }
  Eigen::VectorXd w(gamma.size());
  for (Eigen::Index k = 0; k < gamma.size(); ++k) {
    w(k) = wrap_angle(gamma(k));
  }
  return w;
}

GammaChart::GammaChart(std::shared_ptr<const LieBasis> b, std::vector<int> ord)
    : basis(std::move(b)),
      order(std::move(ord)),
      gamma(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(order.size()))) {
  validate();
}

GammaChart::GammaChart(std::shared_ptr<const LieBasis> b, std::vector<int> ord,
                       Eigen::VectorXd g)
    : basis(std::move(b)), order(std::move(ord)), gamma(std::move(g)) {
  validate();
}

GammaChart GammaChart::wrapped() const {
  GammaChart c(*this);
  c.gamma = wrap_gamma(gamma);
  return c;
}

void GammaChart::validate() const {
  if (!basis) {
    throw std::invalid_argument("GammaChart: null basis");
  }
  if (order.empty()) {
    throw std::invalid_argument("GammaChart: empty order");
  }
  for (int j : order) {
    if (j < 0 || j >= basis->dim()) {
      throw std::invalid_argument("GammaChart: order index out of range");
    }
  }
  if (gamma.size() != static_cast<Eigen::Index>(order.size())) {
    throw std::invalid_argument("GammaChart: gamma length does not match order");
  }
  if (!gamma.allFinite()) {
    throw std::invalid_argument("GammaChart: non-finite gamma");
  }
}

}  // namespace wn
