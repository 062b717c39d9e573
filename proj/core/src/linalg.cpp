#include "solhup/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "solhup/errors.hpp"

namespace solhup {

double SymMatrix::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

Cholesky::Cholesky(const SymMatrix& a) : n_(a.size()), l_(static_cast<std::size_t>(n_) * n_, 0.0) {
  for (int j = 0; j < n_; ++j) {
    double diag = a(j, j);
    for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0)) throw VerificationError("Cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(diag);
    l_[static_cast<std::size_t>(j) * n_ + j] = ljj;
    for (int i = j + 1; i < n_; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l_[static_cast<std::size_t>(i) * n_ + j] = s / ljj;
    }
  }
}

void Cholesky::forward(std::vector<double>& b) const {
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
}

void Cholesky::backward(std::vector<double>& b) const {
  for (int i = n_ - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n_; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
}

namespace {

double offdiag_norm(const SymMatrix& a) {
  const int n = a.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenSystem cyclic_jacobi(SymMatrix a, double offdiag_tol, int max_sweeps) {
  const int n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;  // v[col] is an eigenvector-in-progress

  const double scale = std::max(a.frobenius(), 1e-300);
  int sweep = 0;
  while (offdiag_norm(a) > offdiag_tol * scale) {
    if (++sweep > max_sweeps) throw VerificationError("cyclic_jacobi: no convergence");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = akp - s * (akq + tau * akp);
          a(k, q) = a(q, k) = akq + s * (akp - tau * akq);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[p][k], vkq = v[q][k];
          v[p][k] = vkp - s * (vkq + tau * vkp);
          v[q][k] = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors[k] = v[order[k]];
  }
  return out;
}

void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& first_components) {
  const int n = static_cast<int>(d.size());
  first_components.assign(n, 0.0);
  if (n == 0) return;
  first_components[0] = 1.0;
  if (n == 1) return;

  constexpr double eps = 2.3e-16;
  e.resize(n);
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw VerificationError("tridiagonal_eigen: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        // rotate only the first row of the accumulated eigenvector matrix
        f = first_components[i + 1];
        first_components[i + 1] = s * first_components[i] + c * f;
        first_components[i] = c * first_components[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace solhup
