#include "solhup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stack>
#include <stdexcept>

#include "solhup/errors.hpp"
#include "solhup/linalg.hpp"

namespace solhup {

double QuadratureRule::sum_weights() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureRule gauss_laguerre_rule(double alpha, int n) {
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre_rule: alpha must be > -1");
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_laguerre_rule: n must be in [1, 256]");

  // Jacobi matrix of the monic generalized Laguerre recurrence:
  //   a_k = 2k + alpha + 1,  b_k = sqrt(k (k + alpha)).
  std::vector<double> d(n), e(n, 0.0), z;
  for (int k = 0; k < n; ++k) d[k] = 2.0 * k + alpha + 1.0;
  for (int k = 0; k + 1 < n; ++k) e[k] = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
  tridiagonal_eigen(d, e, z);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

  QuadratureRule rule{RuleKind::gauss_laguerre_generalized, alpha, {}, {}};
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mass = std::tgamma(alpha + 1.0);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = d[order[k]];
    rule.weights[k] = mass * z[order[k]] * z[order[k]];
  }

  for (int k = 0; k < n; ++k) {
    // weights shrink like e^{-node}; past node ~700 they drop below the
    // smallest subnormal and come back as an exact zero, which is fine
    const bool weight_ok =
        rule.weights[k] > 0.0 || (rule.weights[k] == 0.0 && rule.nodes[k] > 600.0);
    if (!(rule.nodes[k] > 0.0) || !weight_ok ||
        (k > 0 && !(rule.nodes[k] > rule.nodes[k - 1])))
      throw VerificationError("gauss_laguerre_rule: eigensolve produced an invalid rule");
  }
  return rule;
}

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1 || n > 1024) throw std::invalid_argument("gauss_legendre_rule: n must be in [1, 1024]");
  QuadratureRule rule{RuleKind::gauss_legendre_panel, 0.0, std::vector<double>(n),
                      std::vector<double>(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule gauss_jacobi01_rule(double beta, int n) {
  if (!(beta > -1.0)) throw std::invalid_argument("gauss_jacobi01_rule: beta must be > -1");
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_jacobi01_rule: n must be in [1, 256]");

  // monic Jacobi recurrence for the weight (1+x)^beta on (-1, 1)
  std::vector<double> d(n), e(n, 0.0), z;
  d[0] = beta / (beta + 2.0);
  for (int k = 1; k < n; ++k)
    d[k] = beta * beta / ((2.0 * k + beta) * (2.0 * k + beta + 2.0));
  for (int k = 1; k < n; ++k) {
    double bk;
    if (k == 1)
      bk = 4.0 * (1.0 + beta) / ((2.0 + beta) * (2.0 + beta) * (3.0 + beta));
    else
      bk = 4.0 * k * k * (k + beta) * (k + beta) /
           ((2.0 * k + beta) * (2.0 * k + beta) * (2.0 * k + beta + 1.0) *
            (2.0 * k + beta - 1.0));
    e[k - 1] = std::sqrt(bk);
  }
  tridiagonal_eigen(d, e, z);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

  // map to t = (1+x)/2 with weight t^beta; total mass 1/(beta+1)
  QuadratureRule rule{RuleKind::gauss_jacobi_unit, beta, {}, {}};
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mass = 1.0 / (beta + 1.0);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = 0.5 * (1.0 + d[order[k]]);
    rule.weights[k] = mass * z[order[k]] * z[order[k]];
  }
  for (int k = 0; k < n; ++k) {
    if (!(rule.nodes[k] > 0.0) || !(rule.nodes[k] < 1.0) || !(rule.weights[k] > 0.0) ||
        (k > 0 && !(rule.nodes[k] > rule.nodes[k - 1])))
      throw VerificationError("gauss_jacobi01_rule: eigensolve produced an invalid rule");
  }
  return rule;
}

namespace {

const QuadratureRule& panel_rule() {
  static const QuadratureRule rule = gauss_legendre_rule(15);
  return rule;
}

}  // namespace

IntegralResult integrate_halfline(const std::function<double(double)>& f, double tol,
                                  TailHint tail) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_halfline: tol must be > 0");
  if (!tail.is_exponential && !(tail.order < -1.0))
    throw std::invalid_argument("integrate_halfline: algebraic tail order must be < -1");
  const double p = tail.is_exponential ? -16.0 : tail.order;

  long evals = 0;
  auto F = [&](double x) {
    ++evals;
    return f(x);
  };

  // Upper cutoff: fit the envelope amplitude from two large abscissae, then
  // push the analytic tail bound C x^{p+1}/|p+1| below tol/20.
  double x_hi = 0.0, tail_bound = 0.0;
  {
    double X = tail.is_exponential ? 64.0 : 32.0;
    bool found = false;
    for (int step = 0; step < 44 && !found; ++step, X *= 2.0) {
      const double f1 = std::abs(F(X));
      const double f2 = std::abs(F(2.0 * X));
      const double amp = 2.0 * std::max(f1 * std::pow(X, -p), f2 * std::pow(2.0 * X, -p));
      const double cut = 2.0 * X;
      const double bound = amp * std::pow(cut, p + 1.0) / (-(p + 1.0));
      if (bound < 0.05 * tol) {
        x_hi = cut;
        tail_bound = bound;
        found = true;
      }
    }
    if (!found)
      throw QuadratureError("integrate_halfline: tail bound not met within the probe ladder",
                            IntegralResult{0.0, INFINITY, evals});
  }

  // Lower cutoff: integral over (0, x_lo) bounded by x_lo * sampled sup.
  double x_lo = 1e-3, lo_bound = 0.0;
  for (int step = 0; step < 120; ++step) {
    const double m =
        std::max({std::abs(F(x_lo)), std::abs(F(0.5 * x_lo)), std::abs(F(0.25 * x_lo))});
    lo_bound = 2.0 * m * x_lo;
    if (lo_bound < 0.05 * tol || x_lo < 1e-160) break;
    x_lo /= 16.0;
  }
  if (lo_bound >= 0.05 * tol)
    throw QuadratureError("integrate_halfline: integrand too singular near zero",
                          IntegralResult{0.0, INFINITY, evals});

  // Log substitution x = e^t; bisection-adaptive 15-point panels in t.
  const auto& rule = panel_rule();
  auto segment = [&](double a, double b) {
    const double mid = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = mid + h * rule.nodes[i];
      const double x = std::exp(t);
      s += rule.weights[i] * F(x) * x;
    }
    return s * h;
  };

  const double ta = std::log(x_lo), tb = std::log(x_hi);
  const double width = tb - ta;
  struct Panel {
    double a, b;
    int depth;
  };
  std::stack<Panel> todo;
  todo.push({ta, tb, 0});
  double total = 0.0, err_acc = 0.0;
  bool depth_breached = false;
  while (!todo.empty()) {
    const Panel panel = todo.top();
    todo.pop();
    const double whole = segment(panel.a, panel.b);
    const double mid = 0.5 * (panel.a + panel.b);
    const double left = segment(panel.a, mid);
    const double right = segment(mid, panel.b);
    const double diff = std::abs(whole - (left + right));
    if (!std::isfinite(diff))
      throw QuadratureError("integrate_halfline: integrand is not finite",
                            IntegralResult{total, INFINITY, evals});
    const double budget = 0.45 * tol * (panel.b - panel.a) / width;
    if (diff <= budget || panel.depth >= 40) {
      if (panel.depth >= 40 && diff > budget) depth_breached = true;
      total += left + right;
      err_acc += diff;
      continue;
    }
    todo.push({panel.a, mid, panel.depth + 1});
    todo.push({mid, panel.b, panel.depth + 1});
  }

  IntegralResult out{total, err_acc + tail_bound + lo_bound, evals};
  if (depth_breached)
    throw QuadratureError("integrate_halfline: panel depth 40 exceeded", out);
  return out;
}

}  // namespace solhup
