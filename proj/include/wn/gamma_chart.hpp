#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "wn/lie_basis.hpp"

namespace wn {

// Ordering of basis indices for a product-of-exponentials chart, 0-based.
// Repetitions are allowed; the ZYZ chart on su(2) is {2, 1, 2}.
std::vector<int> canonical_order(int n);
std::vector<int> zyz_order();

// su(2) charts of the shape (p, q, p) with p != q: the repeated-axis family
// that admits closed-form dynamics on its singular slice.
bool is_repeated_pair_order(const std::vector<int>& order);

// Principal-value wrap of one coordinate into (-2 pi, 2 pi].
double wrap_angle(double x);

// Componentwise wrap into the principal cube (-2 pi, 2 pi]^n.
// Throws on non-finite input.
Eigen::VectorXd wrap_gamma(const Eigen::VectorXd& gamma);

// A coordinate point of the product-of-exponentials map: basis, ordering
// rho, and the coordinate vector gamma (one entry per ordering slot).
struct GammaChart {
  std::shared_ptr<const LieBasis> basis;
  std::vector<int> order;
  Eigen::VectorXd gamma;

  GammaChart() = default;
  GammaChart(std::shared_ptr<const LieBasis> b, std::vector<int> ord);
  GammaChart(std::shared_ptr<const LieBasis> b, std::vector<int> ord,
             Eigen::VectorXd g);

  GammaChart wrapped() const;
  void validate() const;
};

}  // namespace wn
