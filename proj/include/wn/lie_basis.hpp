#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace wn {

// Structure constants of a list of skew-Hermitian matrices, defined by
// [A_i, A_j] = sum_k c[i][j][k] A_k and computed by projecting each
// commutator onto the elements with the inner product <X,Y> = -2 tr(X Y).
// Returned as one n x n matrix per leading index: result[i](j,k) = c[i][j][k].
// Throws std::invalid_argument if the Gram matrix is singular (the elements
// do not form a basis).
std::vector<Eigen::MatrixXd> structure_constants(
    const std::vector<Eigen::MatrixXcd>& elements);

class LieBasis;
std::vector<Eigen::MatrixXd> structure_constants(const LieBasis& basis);

// Ordered basis {A_1,...,A_n} of su(N), n = N^2 - 1, together with its
// structure tensor, adjoint matrices and cached eigensystems for fast
// one-parameter exponentials.
//
// The elements are scaled Gell-Mann style generators ordered as the
// symmetric family (i/2)(E_jk + E_kj), the real rotation family
// (1/2)(E_kj - E_jk), then the diagonal family, each pair family in
// lexicographic (j,k) order. The sign of the rotation family is chosen so
// that at N = 2 the structure constants come out c_12^3 = c_23^1 = c_31^2
// = +1, matching the adjoint matrices used by the ZYZ closed forms.
// The basis is orthonormal under <X,Y> = -2 tr(X Y).
class LieBasis {
 public:
  int dim_rep() const { return N_; }  // N
  int dim() const { return n_; }      // n = N^2 - 1

  const Eigen::MatrixXcd& element(int j) const;
  const std::vector<Eigen::MatrixXcd>& elements() const { return elements_; }

  // c[i][j][k]; indices are 0-based
  double c(int i, int j, int k) const;

  // n x n matrix of ad_{A_j}: (ad_j)(k,i) = c[j][i][k]
  const Eigen::MatrixXd& adjoint(int j) const;

  // Coordinates of X in the basis via the trace inner product.
  Eigen::VectorXd coordinates(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd from_coordinates(const Eigen::VectorXd& v) const;

  // exp(gamma A_j) and exp(gamma ad_{A_j}) through cached eigensystems;
  // gamma == 0 returns an exact identity.
  Eigen::MatrixXcd exp_element(int j, double gamma) const;
  Eigen::MatrixXd exp_adjoint(int j, double gamma) const;

  // true when exp(4 pi A_j) = I, i.e. the coordinate direction is periodic
  // with the principal cube of side 4 pi
  bool periodic_4pi(int j) const;

 private:
  friend LieBasis build_su_basis(int N);
  LieBasis() = default;

  struct EigSystem {
    Eigen::MatrixXcd vectors;  // V with M = V diag(i * angles) V^H
    Eigen::VectorXd angles;
  };

  Eigen::MatrixXcd exp_from(const EigSystem& eig, double gamma) const;

  int N_ = 0;
  int n_ = 0;
  std::vector<Eigen::MatrixXcd> elements_;
  std::vector<Eigen::MatrixXd> c_;    // c_[i](j,k) = c[i][j][k]
  std::vector<Eigen::MatrixXd> ad_;   // ad_[j] = c_[j]^T
  std::vector<EigSystem> elem_eig_;
  std::vector<EigSystem> ad_eig_;
  std::vector<bool> periodic_;
};

// Builds the su(N) basis described above. Rejects N < 2.
LieBasis build_su_basis(int N);
std::shared_ptr<const LieBasis> make_su_basis(int N);

// The adjoint matrix of basis element j (0-based); throws on a bad index.
Eigen::MatrixXd adjoint_matrix(const LieBasis& basis, int j);

}  // namespace wn
