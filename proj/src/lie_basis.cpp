#include "wn/lie_basis.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace wn {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

double trace_inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  return -2.0 * (x * y).trace().real();
}

}  // namespace

std::vector<Eigen::MatrixXd> structure_constants(
    const std::vector<Eigen::MatrixXcd>& elements) {
  const int n = static_cast<int>(elements.size());
  if (n == 0) {
    throw std::invalid_argument("structure_constants: empty element list");
  }
  Eigen::MatrixXd gram(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      gram(k, l) = trace_inner(elements[k], elements[l]);
      gram(l, k) = gram(k, l);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible()) {
    throw std::invalid_argument(
        "structure_constants: singular Gram matrix, elements are not a basis");
  }

  std::vector<Eigen::MatrixXd> c(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::MatrixXcd comm =
          elements[i] * elements[j] - elements[j] * elements[i];
      Eigen::VectorXd b(n);
      for (int k = 0; k < n; ++k) {
        b(k) = trace_inner(comm, elements[k]);
      }
      const Eigen::VectorXd x = lu.solve(b);
      c[i].row(j) = x.transpose();
      c[j].row(i) = -x.transpose();
    }
  }
  return c;
}

const Eigen::MatrixXcd& LieBasis::element(int j) const {
  if (j < 0 || j >= n_) {
    throw std::out_of_range("LieBasis::element: index out of range");
  }
  return elements_[static_cast<size_t>(j)];
}

double LieBasis::c(int i, int j, int k) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || k < 0 || k >= n_) {
    throw std::out_of_range("LieBasis::c: index out of range");
  }
  return c_[static_cast<size_t>(i)](j, k);
}

const Eigen::MatrixXd& LieBasis::adjoint(int j) const {
  if (j < 0 || j >= n_) {
    throw std::out_of_range("LieBasis::adjoint: index out of range");
  }
  return ad_[static_cast<size_t>(j)];
}

Eigen::VectorXd LieBasis::coordinates(const Eigen::MatrixXcd& x) const {
  Eigen::VectorXd v(n_);
  for (int k = 0; k < n_; ++k) {
    v(k) = trace_inner(x, elements_[static_cast<size_t>(k)]);
  }
  return v;
}

Eigen::MatrixXcd LieBasis::from_coordinates(const Eigen::VectorXd& v) const {
  if (v.size() != n_) {
    throw std::invalid_argument("LieBasis::from_coordinates: bad length");
  }
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(N_, N_);
  for (int k = 0; k < n_; ++k) {
    x += v(k) * elements_[static_cast<size_t>(k)];
  }
  return x;
}

Eigen::MatrixXcd LieBasis::exp_from(const EigSystem& eig, double gamma) const {
  const Eigen::Index m = eig.angles.size();
  if (gamma == 0.0) {
    return Eigen::MatrixXcd::Identity(m, m);
  }
  Eigen::VectorXcd phases(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    phases(k) = std::polar(1.0, gamma * eig.angles(k));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Eigen::MatrixXcd LieBasis::exp_element(int j, double gamma) const {
  if (j < 0 || j >= n_) {
    throw std::out_of_range("LieBasis::exp_element: index out of range");
  }
  return exp_from(elem_eig_[static_cast<size_t>(j)], gamma);
}

Eigen::MatrixXd LieBasis::exp_adjoint(int j, double gamma) const {
  if (j < 0 || j >= n_) {
    throw std::out_of_range("LieBasis::exp_adjoint: index out of range");
  }
  return exp_from(ad_eig_[static_cast<size_t>(j)], gamma).real();
}

bool LieBasis::periodic_4pi(int j) const {
  if (j < 0 || j >= n_) {
    throw std::out_of_range("LieBasis::periodic_4pi: index out of range");
  }
  return periodic_[static_cast<size_t>(j)];
}

namespace {

// A = V diag(i angles) V^H for skew-Hermitian A (real antisymmetric input is
// cast to complex).
std::pair<Eigen::MatrixXcd, Eigen::VectorXd> decompose_skew(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(-kI * a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("LieBasis: eigendecomposition failed");
  }
  return {es.eigenvectors(), es.eigenvalues()};
}

}  // namespace

LieBasis build_su_basis(int N) {
  if (N < 2) {
    throw std::invalid_argument("build_su_basis: N must be >= 2");
  }
  LieBasis b;
  b.N_ = N;
  b.n_ = N * N - 1;

  auto unit = [N](int r, int s) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(N, N);
    e(r, s) = 1.0;
    return e;
  };

  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      b.elements_.push_back(0.5 * kI * (unit(j, k) + unit(k, j)));
    }
  }
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      b.elements_.push_back(0.5 * (unit(k, j) - unit(j, k)));
    }
  }
  for (int l = 1; l < N; ++l) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(N, N);
    for (int m = 0; m < l; ++m) {
      d(m, m) = 1.0;
    }
    d(l, l) = -static_cast<double>(l);
    b.elements_.push_back(0.5 * kI * std::sqrt(2.0 / (l * (l + 1.0))) * d);
  }

  b.c_ = structure_constants(b.elements_);
  b.ad_.reserve(static_cast<size_t>(b.n_));
  for (int j = 0; j < b.n_; ++j) {
    b.ad_.push_back(b.c_[static_cast<size_t>(j)].transpose());
  }

  for (int j = 0; j < b.n_; ++j) {
    auto [ev, ea] = decompose_skew(b.elements_[static_cast<size_t>(j)]);
    b.elem_eig_.push_back({std::move(ev), std::move(ea)});
    auto [av, aa] = decompose_skew(
        b.ad_[static_cast<size_t>(j)].cast<std::complex<double>>());
    b.ad_eig_.push_back({std::move(av), std::move(aa)});
  }

  // A direction is 4 pi periodic exactly when all eigenangles of A_j are
  // half-integers.
  for (int j = 0; j < b.n_; ++j) {
    const Eigen::VectorXd& ang = b.elem_eig_[static_cast<size_t>(j)].angles;
    bool periodic = true;
    for (Eigen::Index k = 0; k < ang.size(); ++k) {
      if (std::abs(2.0 * ang(k) - std::round(2.0 * ang(k))) > 1e-9) {
        periodic = false;
        break;
      }
    }
    b.periodic_.push_back(periodic);
  }

  // Every element must be skew-Hermitian and traceless, and the structure
  // tensor must reconstruct every commutator.
  for (int j = 0; j < b.n_; ++j) {
    const Eigen::MatrixXcd& a = b.elements_[static_cast<size_t>(j)];
    if ((a + a.adjoint()).norm() > 1e-12 || std::abs(a.trace()) > 1e-12) {
      throw std::logic_error("build_su_basis: element invariant violated");
    }
  }
  for (int i = 0; i < b.n_; ++i) {
    for (int j = 0; j < b.n_; ++j) {
      Eigen::MatrixXcd rec = Eigen::MatrixXcd::Zero(N, N);
      for (int k = 0; k < b.n_; ++k) {
        rec += b.c(i, j, k) * b.elements_[static_cast<size_t>(k)];
      }
      const Eigen::MatrixXcd comm =
          b.elements_[static_cast<size_t>(i)] * b.elements_[static_cast<size_t>(j)] -
          b.elements_[static_cast<size_t>(j)] * b.elements_[static_cast<size_t>(i)];
      if ((comm - rec).norm() > 1e-12) {
        throw std::logic_error("build_su_basis: commutator reconstruction failed");
      }
    }
  }
  return b;
}

std::shared_ptr<const LieBasis> make_su_basis(int N) {
  return std::make_shared<const LieBasis>(build_su_basis(N));
}

std::vector<Eigen::MatrixXd> structure_constants(const LieBasis& basis) {
  return structure_constants(basis.elements());
}

Eigen::MatrixXd adjoint_matrix(const LieBasis& basis, int j) {
  return basis.adjoint(j);
}

}  // namespace wn
