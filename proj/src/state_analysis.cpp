#include "wn/state_analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wn/xi.hpp"

namespace wn {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

bool in_state_isotropy(const UnitaryMatrix& u, const QuantumState& psi0, double tol) {
  const QuantumState moved = apply(u, psi0);
  return phase_insensitive_error(moved.v, psi0.v) < tol;
}

bool in_gamma_isotropy(const GammaChart& chart, const QuantumState& psi0, double tol) {
  return in_state_isotropy(pexp(chart), psi0, tol);
}

std::vector<Eigen::VectorXd> zyz_slice_sampler(const LieBasis& basis,
                                               const std::vector<int>& order,
                                               int count, std::mt19937& rng) {
  if (basis.dim_rep() != 2 || !is_repeated_pair_order(order)) {
    throw std::invalid_argument(
        "zyz_slice_sampler: needs an su(2) repeated-axis chart");
  }
  const double slices[4] = {-std::numbers::pi, 0.0, std::numbers::pi, kTwoPi};
  std::uniform_real_distribution<double> uni(-kTwoPi, kTwoPi);

  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    Eigen::Vector3d g(uni(rng), slices[k % 4], uni(rng));
    out.emplace_back(g);
  }
  return out;
}

std::vector<Eigen::VectorXd> det_bisection_sampler(const LieBasis& basis,
                                                   const std::vector<int>& order,
                                                   int count, std::mt19937& rng) {
  const int n = basis.dim();
  XiAssembler assembler(
      std::make_shared<const LieBasis>(basis), order);
  std::uniform_real_distribution<double> uni(-kTwoPi, kTwoPi);

  auto det_at = [&](const Eigen::VectorXd& g) { return assembler.assemble(g).det; };

  std::vector<Eigen::VectorXd> out;
  int attempts = 0;
  const int max_attempts = 1000;
  const int scan = 64;
  while (static_cast<int>(out.size()) < count && attempts++ < max_attempts) {
    Eigen::VectorXd a(n), b(n);
    for (int k = 0; k < n; ++k) {
      a(k) = uni(rng);
      b(k) = uni(rng);
    }
    // scan the segment for a sign change, then bisect
    double prev_s = 0.0;
    double prev_d = det_at(a);
    for (int i = 1; i <= scan; ++i) {
      const double s = static_cast<double>(i) / scan;
      const double d = det_at(a + s * (b - a));
      if (prev_d == 0.0 || d == 0.0 || (prev_d < 0.0) != (d < 0.0)) {
        double lo = prev_s, hi = s, dlo = prev_d;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double dm = det_at(a + mid * (b - a));
          if (dm == 0.0) { lo = hi = mid; break; }
          if ((dlo < 0.0) != (dm < 0.0)) {
            hi = mid;
          } else {
            lo = mid;
            dlo = dm;
          }
        }
        out.emplace_back(a + 0.5 * (lo + hi) * (b - a));
        break;
      }
      prev_s = s;
      prev_d = d;
    }
  }
  return out;
}

IsotropyReport universality_check(std::shared_ptr<const LieBasis> basis,
                                  const std::vector<int>& order,
                                  const QuantumState& psi0,
                                  const SingularSampler& sampler, int samples,
                                  unsigned seed, double tol) {
  if (!sampler) {
    throw std::invalid_argument("universality_check: null sampler");
  }
  std::mt19937 rng(seed);
  const std::vector<Eigen::VectorXd> points = sampler(*basis, order, samples, rng);
  if (points.empty()) {
    throw std::runtime_error("universality_check: sampler produced no points");
  }

  const bool zyz_like = basis->dim_rep() == 2 && is_repeated_pair_order(order);

  IsotropyReport report;
  report.sampler_name = zyz_like ? "zyz_slices" : "det_line_bisection";
  report.sampler_approximate = !zyz_like;

  const int N = basis->dim_rep();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(N, N);
  for (const Eigen::VectorXd& g : points) {
    const GammaChart chart(basis, order, g);
    const UnitaryMatrix u = pexp(chart);
    IsotropySample s;
    s.gamma = g;
    s.member = in_state_isotropy(u, psi0, tol);
    if (phase_insensitive_unitary_error(u.m, eye) < tol) {
      s.cls = IsotropyClass::IdentityIsotropy;
    } else if (s.member) {
      s.cls = IsotropyClass::StateIsotropyOnly;
    } else {
      s.cls = IsotropyClass::Outside;
      report.witnesses.push_back(g);
    }
    if (s.member) ++report.member_count;
    report.samples.push_back(std::move(s));
  }
  report.verdict = report.witnesses.empty() ? UniversalityVerdict::UniversalOnSamples
                                            : UniversalityVerdict::Inconclusive;
  return report;
}

std::string IsotropyReport::to_text() const {
  std::ostringstream os;
  os << "sampler: " << sampler_name
     << (sampler_approximate ? " (approximate)" : "") << "\n";
  os << "samples: " << samples.size() << "\n";
  os << "members: " << member_count << "\n";
  os << "verdict: "
     << (verdict == UniversalityVerdict::UniversalOnSamples
             ? "universal (sufficient condition holds on all samples)"
             : "inconclusive - singular analysis required")
     << "\n";
  if (!witnesses.empty()) {
    os << "witnesses_outside: " << witnesses.size() << "\n";
    const size_t shown = std::min<size_t>(witnesses.size(), 8);
    for (size_t i = 0; i < shown; ++i) {
      os << "  gamma =";
      for (Eigen::Index k = 0; k < witnesses[i].size(); ++k) {
        os << " " << witnesses[i](k);
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace wn
