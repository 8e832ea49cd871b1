#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "wn/gamma_chart.hpp"
#include "wn/lie_basis.hpp"
#include "wn/propagator.hpp"

namespace wn {

inline constexpr double kDefaultPhaseTol = 1e-9;

// U fixes psi0 up to a global phase.
bool in_state_isotropy(const UnitaryMatrix& u, const QuantumState& psi0,
                       double tol = kDefaultPhaseTol);

// pexp(chart) fixes psi0 up to a global phase.
bool in_gamma_isotropy(const GammaChart& chart, const QuantumState& psi0,
                       double tol = kDefaultPhaseTol);

enum class IsotropyClass { IdentityIsotropy, StateIsotropyOnly, Outside };

struct IsotropySample {
  Eigen::VectorXd gamma;
  IsotropyClass cls;
  bool member;  // inside the gamma-isotropy subgroup of psi0
};

enum class UniversalityVerdict {
  UniversalOnSamples,  // sufficient condition held on every sample
  Inconclusive         // witnesses outside; singular analysis required
};

struct IsotropyReport {
  UniversalityVerdict verdict;
  std::vector<IsotropySample> samples;
  std::vector<Eigen::VectorXd> witnesses;
  std::string sampler_name;
  bool sampler_approximate = false;
  size_t member_count = 0;

  std::string to_text() const;
};

// Yields points of the singular locus of the given ordering.
using SingularSampler = std::function<std::vector<Eigen::VectorXd>(
    const LieBasis& basis, const std::vector<int>& order, int count,
    std::mt19937& rng)>;

// Exhaustive-by-slice sampler for su(2) repeated-axis charts: uniform points
// on the four gamma_2 slices {-pi, 0, pi, 2 pi}.
std::vector<Eigen::VectorXd> zyz_slice_sampler(const LieBasis& basis,
                                               const std::vector<int>& order,
                                               int count, std::mt19937& rng);

// Generic approximate sampler: sign-change bisection of det Xi along random
// lines through the principal cube.
std::vector<Eigen::VectorXd> det_bisection_sampler(const LieBasis& basis,
                                                   const std::vector<int>& order,
                                                   int count, std::mt19937& rng);

// Tests the sufficient universality condition (singular locus contained in
// the gamma-isotropy subgroup of psi0) on sampled singular points. Never
// claims non-universality: failures make the verdict inconclusive and are
// reported as witnesses.
IsotropyReport universality_check(std::shared_ptr<const LieBasis> basis,
                                  const std::vector<int>& order,
                                  const QuantumState& psi0,
                                  const SingularSampler& sampler, int samples,
                                  unsigned seed, double tol = kDefaultPhaseTol);

}  // namespace wn
