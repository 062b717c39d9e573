#pragma once

#include <cstddef>
#include <vector>

namespace solhup {

/// Dense symmetric matrix, full row-major storage. Sized for the small
/// eigenproblems in this project (n <= a few hundred).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  double max_asymmetry() const;  // max |a_ij - a_ji|
  double frobenius() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Cholesky factor L (lower triangular, A = L L^T). Throws VerificationError
/// if a pivot is not strictly positive.
class Cholesky {
 public:
  explicit Cholesky(const SymMatrix& a);

  int size() const { return n_; }
  /// Solve L y = b in place.
  void forward(std::vector<double>& b) const;
  /// Solve L^T x = y in place.
  void backward(std::vector<double>& b) const;
  double l(int i, int j) const { return l_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<double> l_;
};

struct EigenSystem {
  std::vector<double> values;            // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] belongs to values[k]
};

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Sweeps rotate
/// every off-diagonal pair until the off-diagonal Frobenius norm falls below
/// offdiag_tol * ||A||_F. Throws on non-convergence within max_sweeps.
EigenSystem cyclic_jacobi(SymMatrix a, double offdiag_tol = 1e-13, int max_sweeps = 100);

/// Eigenvalues of a symmetric tridiagonal matrix (diag d, off-diag e) by the
/// implicit-shift QL iteration, together with the first component of each
/// normalized eigenvector (all that Golub-Welsch quadrature needs).
/// d, e are overwritten; on return d holds unsorted eigenvalues and
/// first_components[i] pairs with d[i]. e[0..n-2] are the sub-diagonal terms.
void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& first_components);

}  // namespace solhup
