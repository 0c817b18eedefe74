#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wma/symfun.hpp"

namespace wma {

/// Admissible multi-index 1 <= a_1 < ... < a_m <= n, stored 0-based.
struct MultiIndex {
  std::vector<int> indices;
  /// Rank in dictionary order, starting from 0.
  int order = 0;

  /// 1-based label such as "(13)".
  std::string label() const;
};

/// The C(n, m) admissible multi-indices in dictionary order.
std::vector<MultiIndex> multi_indices(int n, int m);

/// Symmetric n x n matrix of second derivatives u_ij.
class HessianMatrix {
 public:
  /// Copies the upper triangle of `m` into both halves. Throws DomainError for a
  /// non-square or non-finite input.
  explicit HessianMatrix(const Eigen::MatrixXd& m);

  static HessianMatrix diagonal(const Eigen::VectorXd& d);
  /// Q diag(mu) Q^T.
  static HessianMatrix from_spectrum(const Eigen::VectorXd& mu, const Eigen::MatrixXd& q);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  /// Eigenvalues of the Hessian as a sorted tuple.
  EigenTuple spectrum() const;

 private:
  Eigen::MatrixXd m_;
};

/// Matrix of the induced operator on the m-th exterior power, with multi-index labels.
struct WMatrix {
  Eigen::MatrixXd entries;
  std::vector<MultiIndex> labels;
};

/// Assembles W: diagonal sum_{i in a} u_{a_i a_i}; (-1)^{|i-j|} u_{a_i b_j} when a and b
/// share all but the entries at positions i and j; zero otherwise.
WMatrix assemble_w(const HessianMatrix& hess, int m);

/// det(W) by LU factorization of the assembled matrix.
double det_w(const HessianMatrix& hess, int m);

/// Transposed cofactor matrix; defined for singular input too.
Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a);

/// F^{ij} = d det(W) / d u_ij as a symmetric matrix, so that
/// d det(W) = sum_ij F^{ij} du_ij for symmetric perturbations.
/// Uses the cofactors of W, so repeated eigenvalues need no special handling.
Eigen::MatrixXd linearization(const HessianMatrix& hess, int m);

/// det(W(A/2 + B/2))^{1/N} - det(W(A))^{1/N}/2 - det(W(B))^{1/N}/2 with N = C(n, m).
/// Throws DomainError unless both spectra are strictly m-convex.
double concavity_probe(const HessianMatrix& a, const HessianMatrix& b, int m);

}  // namespace wma
