#include "solhup/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "solhup/errors.hpp"
#include "solhup/quadrature.hpp"

namespace solhup {

namespace {

// L_0^{(alpha)}(t) .. L_{count-1}^{(alpha)}(t) by the three-term recurrence.
void laguerre_values(int count, double alpha, double t, std::vector<double>& out) {
  out.resize(count);
  if (count == 0) return;
  out[0] = 1.0;
  if (count == 1) return;
  out[1] = alpha + 1.0 - t;
  for (int k = 1; k + 1 < count; ++k)
    out[k + 1] = ((2.0 * k + alpha + 1.0 - t) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
}

double laguerre_value(int k, double alpha, double t) {
  double l0 = 1.0;
  if (k == 0) return l0;
  double l1 = alpha + 1.0 - t;
  for (int j = 1; j < k; ++j) {
    const double l2 = ((2.0 * j + alpha + 1.0 - t) * l1 - (j + alpha) * l0) / (j + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

// Factors f with phi = f * e^{-x}: value, first and second derivative of
// phi_k(x) = e^{-x} L_k^{(mu)}(2x), all divided by e^{-x}.
struct FactorTable {
  std::vector<double> val, d1, d2;
};

void basis_factors(int count, double mu, double x, FactorTable& f, std::vector<double>& lm,
                   std::vector<double>& lm1, std::vector<double>& lm2) {
  const double t = 2.0 * x;
  laguerre_values(count, mu, t, lm);
  laguerre_values(count, mu + 1.0, t, lm1);
  laguerre_values(count, mu + 2.0, t, lm2);
  f.val.assign(count, 0.0);
  f.d1.assign(count, 0.0);
  f.d2.assign(count, 0.0);
  for (int k = 0; k < count; ++k) {
    f.val[k] = lm[k];
    f.d1[k] = -lm[k] - (k >= 1 ? 2.0 * lm1[k - 1] : 0.0);
    f.d2[k] = lm[k] + (k >= 1 ? 4.0 * lm1[k - 1] : 0.0) + (k >= 2 ? 4.0 * lm2[k - 2] : 0.0);
  }
}

int tail_count(int K, TrialSpace space) {
  if (space == TrialSpace::laguerre) return 0;
  return std::clamp(K - 2, 0, 4);
}

// int_0^inf x^p (1+x)^{-q} dx = Gamma(p+1) Gamma(q-p-1) / Gamma(q).
double beta_halfline(double p, double q) {
  return std::exp(std::lgamma(p + 1.0) + std::lgamma(q - p - 1.0) - std::lgamma(q));
}

struct TailFns {
  double a;  // base exponent b - mu
  double value(int j, double x) const { return std::pow(1.0 + x, a - j); }
  double d1(int j, double x) const { return (a - j) * std::pow(1.0 + x, a - j - 1.0); }
  double d2(int j, double x) const {
    return (a - j) * (a - j - 1.0) * std::pow(1.0 + x, a - j - 2.0);
  }
};

}  // namespace

std::vector<RadialProfile> build_basis(int K, double mu) {
  if (K < 2 || K > 64) throw std::invalid_argument("build_basis: K must be in [2, 64]");
  if (!(mu > 0.0)) throw std::invalid_argument("build_basis: mu must be > 0");
  std::vector<RadialProfile> basis;
  basis.reserve(K);
  for (int k = 0; k < K; ++k) {
    RadialProfile phi;
    phi.value = [k, mu](double x) { return std::exp(-x) * laguerre_value(k, mu, 2.0 * x); };
    phi.d1 = [k, mu](double x) {
      double f = -laguerre_value(k, mu, 2.0 * x);
      if (k >= 1) f -= 2.0 * laguerre_value(k - 1, mu + 1.0, 2.0 * x);
      return std::exp(-x) * f;
    };
    phi.d2 = [k, mu](double x) {
      double f = laguerre_value(k, mu, 2.0 * x);
      if (k >= 1) f += 4.0 * laguerre_value(k - 1, mu + 1.0, 2.0 * x);
      if (k >= 2) f += 4.0 * laguerre_value(k - 2, mu + 2.0, 2.0 * x);
      return std::exp(-x) * f;
    };
    phi.decay = TailHint::exponential();
    basis.push_back(std::move(phi));
  }
  return basis;
}

GalerkinSystem assemble(int K, const GeneralizedParams& params, TrialSpace space) {
  if (K < 2 || K > 64) throw std::invalid_argument("assemble: K must be in [2, 64]");
  const double mu = params.mu, eps = params.eps;
  const int M = tail_count(K, space);
  const int KL = K - M;

  GalerkinSystem sys;
  sys.K = K;
  sys.params = params;
  sys.space = space;
  sys.n_laguerre = KL;
  sys.A = SymMatrix(K);
  sys.B = SymMatrix(K);

  // Laguerre block: after t = 2x every integrand is polynomial * t^w e^{-t},
  // so the generalized rules integrate it exactly.
  const int n_nodes = KL + static_cast<int>(std::ceil(mu)) + 8;
  const QuadratureRule rule_hi = gauss_laguerre_rule(mu + 1.0, n_nodes);
  const QuadratureRule rule_lo = gauss_laguerre_rule(mu - 1.0, n_nodes);
  const QuadratureRule rule_mid = gauss_laguerre_rule(mu, n_nodes);

  FactorTable f;
  std::vector<double> lm, lm1, lm2;
  const double s_hi = std::pow(2.0, -(mu + 2.0));
  const double s_lo = std::pow(2.0, -mu);
  const double s_mid = std::pow(2.0, -(mu + 1.0));

  for (std::size_t q = 0; q < rule_hi.nodes.size(); ++q) {
    basis_factors(KL, mu, 0.5 * rule_hi.nodes[q], f, lm, lm1, lm2);
    const double w = s_hi * rule_hi.weights[q];
    for (int i = 0; i < KL; ++i)
      for (int j = 0; j <= i; ++j) sys.A(i, j) += w * (f.d2[i] * f.d2[j] + f.d1[i] * f.d1[j]);
  }
  for (std::size_t q = 0; q < rule_lo.nodes.size(); ++q) {
    basis_factors(KL, mu, 0.5 * rule_lo.nodes[q], f, lm, lm1, lm2);
    const double w = eps * s_lo * rule_lo.weights[q];
    for (int i = 0; i < KL; ++i)
      for (int j = 0; j <= i; ++j) sys.A(i, j) -= w * f.val[i] * f.val[j];
  }
  for (std::size_t q = 0; q < rule_mid.nodes.size(); ++q) {
    basis_factors(KL, mu, 0.5 * rule_mid.nodes[q], f, lm, lm1, lm2);
    const double w = s_mid * rule_mid.weights[q];
    for (int i = 0; i < KL; ++i)
      for (int j = 0; j <= i; ++j) sys.B(i, j) += w * f.d1[i] * f.d1[j];
  }

  if (M > 0) {
    const TailFns tails{params.b - mu};
    const double a = tails.a;

    // tail x tail entries have closed forms
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double di = a - i, dj = a - j;
        const double qform = di * (di - 1.0) * dj * (dj - 1.0) *
                             beta_halfline(mu + 1.0, i + j - 2.0 * a + 4.0);
        const double p1grad = di * dj * beta_halfline(mu + 1.0, i + j - 2.0 * a + 2.0);
        const double p1mass = eps * beta_halfline(mu - 1.0, i + j - 2.0 * a);
        const double p0 = di * dj * beta_halfline(mu, i + j - 2.0 * a + 2.0);
        sys.A(KL + i, KL + j) = qform + p1grad - p1mass;
        sys.B(KL + i, KL + j) = p0;
      }
    }

    // tail x Laguerre entries: integrals of G(x) x^s e^{-x} with G smooth.
    // A Gauss-Jacobi region [0, xb] absorbs the fractional power x^s at the
    // origin exactly; beyond xb, composite Gauss-Legendre panels with widths
    // matched to the local oscillation of the Laguerre factor.
    const double xb = 2.0;
    const QuadratureRule gl = gauss_legendre_rule(24);
    const double x_max = 60.0 + 8.0 * (KL + mu);

    // accumulate(s-class) walks all nodes of the split scheme once
    auto sweep = [&](double s, auto&& add) {
      const QuadratureRule jac = gauss_jacobi01_rule(s, KL + 24);
      const double jac_scale = std::pow(xb, s + 1.0);
      for (std::size_t q = 0; q < jac.nodes.size(); ++q)
        add(xb * jac.nodes[q], jac_scale * jac.weights[q]);
      double x0 = xb;
      while (x0 < x_max) {
        const double x1 = std::min(x0 + std::max(0.5, x0 / 6.0), x_max);
        const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
          const double x = mid + half * gl.nodes[q];
          add(x, half * gl.weights[q] * std::pow(x, s));
        }
        x0 = x1;
      }
    };

    sweep(mu + 1.0, [&](double x, double w) {
      basis_factors(KL, mu, x, f, lm, lm1, lm2);
      const double ex = std::exp(-x);
      for (int i = 0; i < M; ++i) {
        const double td1 = tails.d1(i, x), td2 = tails.d2(i, x);
        for (int k = 0; k < KL; ++k)
          sys.A(KL + i, k) += w * (td2 * f.d2[k] + td1 * f.d1[k]) * ex;
      }
    });
    sweep(mu - 1.0, [&](double x, double w) {
      basis_factors(KL, mu, x, f, lm, lm1, lm2);
      const double ex = std::exp(-x);
      for (int i = 0; i < M; ++i) {
        const double tv = tails.value(i, x);
        for (int k = 0; k < KL; ++k) sys.A(KL + i, k) -= w * eps * tv * f.val[k] * ex;
      }
    });
    sweep(mu, [&](double x, double w) {
      basis_factors(KL, mu, x, f, lm, lm1, lm2);
      const double ex = std::exp(-x);
      for (int i = 0; i < M; ++i) {
        const double td1 = tails.d1(i, x);
        for (int k = 0; k < KL; ++k) sys.B(KL + i, k) += w * td1 * f.d1[k] * ex;
      }
    });
  }

  // mirror the lower triangle
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < i; ++j) {
      sys.A(j, i) = sys.A(i, j);
      sys.B(j, i) = sys.B(i, j);
    }
  return sys;
}

std::pair<double, std::vector<double>> min_eigenpair(GalerkinSystem& system) {
  const int n = system.K;

  // diagonal scaling keeps the mixed Laguerre/tail Gram well inside double range
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    const double bii = system.B(i, i);
    if (!(bii > 0.0)) throw VerificationError("min_eigenpair: B has a nonpositive diagonal");
    d[i] = 1.0 / std::sqrt(bii);
  }
  SymMatrix As(n), Bs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      As(i, j) = system.A(i, j) * d[i] * d[j];
      Bs(i, j) = system.B(i, j) * d[i] * d[j];
    }

  const Cholesky chol(Bs);  // throws VerificationError if B is indefinite

  // C = L^{-1} As L^{-T}
  SymMatrix C(n);
  std::vector<double> col(n);
  std::vector<std::vector<double>> w(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = As(i, j);
    chol.forward(col);
    for (int i = 0; i < n; ++i) w[i][j] = col[i];  // w = L^{-1} As
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) col[k] = w[i][k];
    chol.forward(col);
    for (int k = 0; k < n; ++k) C(i, k) = col[k];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      const double sym = 0.5 * (C(i, j) + C(j, i));
      C(i, j) = C(j, i) = sym;
    }

  const EigenSystem eig = cyclic_jacobi(std::move(C), 1e-13, 100);
  const double lambda = eig.values.front();

  std::vector<double> v = eig.vectors.front();
  chol.backward(v);
  for (int i = 0; i < n; ++i) v[i] *= d[i];

  // B-normalize and fix the sign deterministically
  double vbv = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vbv += v[i] * system.B(i, j) * v[j];
  const double nb = std::sqrt(vbv);
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  const double sign = v[imax] < 0.0 ? -1.0 : 1.0;
  for (double& vi : v) vi *= sign / nb;

  system.lambda_min = lambda;
  system.coeffs = v;
  return {lambda, v};
}

RadialProfile expand_profile(const GalerkinSystem& system) {
  if (system.coeffs.empty())
    throw std::logic_error("expand_profile: run min_eigenpair first");
  const int KL = system.n_laguerre;
  const int M = system.K - KL;
  const double mu = system.params.mu;
  const double a = system.params.b - mu;
  const std::vector<double> v = system.coeffs;

  auto sum_over_basis = [KL, M, mu, a, v](double x, int deriv) {
    std::vector<double> lm, lm1, lm2;
    FactorTable f;
    basis_factors(KL, mu, x, f, lm, lm1, lm2);
    const std::vector<double>& fac = deriv == 0 ? f.val : (deriv == 1 ? f.d1 : f.d2);
    double acc = 0.0;
    const double ex = std::exp(-x);
    for (int k = 0; k < KL; ++k) acc += v[k] * fac[k] * ex;
    const TailFns tails{a};
    for (int j = 0; j < M; ++j) {
      const double t = deriv == 0 ? tails.value(j, x)
                                  : (deriv == 1 ? tails.d1(j, x) : tails.d2(j, x));
      acc += v[KL + j] * t;
    }
    return acc;
  };

  RadialProfile g;
  g.value = [sum_over_basis](double x) { return sum_over_basis(x, 0); };
  g.d1 = [sum_over_basis](double x) { return sum_over_basis(x, 1); };
  g.d2 = [sum_over_basis](double x) { return sum_over_basis(x, 2); };
  g.decay = M > 0 ? TailHint::algebraic(a) : TailHint::exponential();
  return g;
}

std::string ConvergenceTable::to_csv() const {
  std::string out = "K,lambda_min,lambda_min_sq,gap\n";
  char line[160];
  for (const ConvergenceRow& row : rows) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", row.K, row.lambda_min,
                  row.lambda_min_sq, row.gap);
    out += line;
  }
  return out;
}

ConvergenceTable converge_constant(const GeneralizedParams& params, int K_max, double target_tol,
                                   TrialSpace space) {
  if (K_max < 2 || K_max > 64)
    throw std::invalid_argument("converge_constant: K_max must be in [2, 64]");
  ConvergenceTable table;
  table.c_theory = params.c;

  std::vector<int> ladder;
  for (int K = 2; K < K_max; K += 2) ladder.push_back(K);
  ladder.push_back(K_max);

  double prev = INFINITY;
  for (int K : ladder) {
    GalerkinSystem sys = assemble(K, params, space);
    const double lambda = min_eigenpair(sys).first;
    const double gap = lambda - params.c;
    if (gap < -1e-12)
      throw VerificationError("converge_constant: lambda_min dipped below c");
    if (lambda > prev + 1e-12)
      throw VerificationError("converge_constant: lambda_min is not nonincreasing");
    prev = lambda;
    table.rows.push_back({K, lambda, lambda * lambda, gap});
    if (gap <= target_tol) {
      table.converged = true;
      break;
    }
  }
  return table;
}

}  // namespace solhup
