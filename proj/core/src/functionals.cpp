#include "solhup/functionals.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "solhup/errors.hpp"

namespace solhup {

namespace {

using Poly = std::vector<double>;

double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly poly_der(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_axpy(double alpha, const Poly& a, const Poly& b) {  // alpha*a + b
  Poly c(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += alpha * a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

Poly poly_shift_mul_x(const Poly& a) {  // x * a
  Poly c(a.size() + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i + 1] = a[i];
  return c;
}

// The polynomial factors of g, g', g'' for g = p(x) e^{-rate x}.
struct PolyParts {
  Poly p0, p1, p2;
  double rate;
};

PolyParts poly_parts(const PolyExpForm& form) {
  PolyParts parts;
  parts.rate = form.rate;
  parts.p0 = form.coeffs;
  const Poly dp = poly_der(form.coeffs);
  const Poly ddp = poly_der(dp);
  parts.p1 = poly_axpy(-form.rate, form.coeffs, dp);          // p' - r p
  parts.p2 = poly_axpy(form.rate * form.rate, form.coeffs,
                       poly_axpy(-2.0 * form.rate, dp, ddp));  // p'' - 2r p' + r^2 p
  return parts;
}

// int_0^inf q(x) x^w e^{-2 rate x} dx, exact: substitute t = 2 rate x and use
// a generalized Gauss-Laguerre rule with enough nodes for the degree of q.
double poly_weighted_integral(const Poly& q, double w, double rate) {
  const double s = 2.0 * rate;
  const int degree = static_cast<int>(q.size()) - 1;
  const int n = degree / 2 + 2;
  const QuadratureRule rule = gauss_laguerre_rule(w, n);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * poly_eval(q, rule.nodes[i] / s);
  return acc * std::pow(s, -(w + 1.0));
}

struct Integrand {
  std::function<double(double)> f;
  TailHint hint;
};

void require_convergent(const TailHint& hint, const char* what);

Estimate run_adaptive(const Integrand& ig, double tol, const char* what) {
  // degenerate profiles (constant, linear) have identically vanishing
  // integrands; detect that before the convergence precheck rejects them
  bool all_zero = true;
  for (double x : {1e-3, 1e-2, 0.1, 0.7, 3.0, 20.0, 150.0, 1e3}) {
    if (ig.f(x) != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return {0.0, 0.0};
  require_convergent(ig.hint, what);
  const IntegralResult r = integrate_halfline(ig.f, tol, ig.hint);
  return {r.value, r.abs_error_estimate};
}

Estimate exact_estimate(double value) { return {value, 1e-15 * std::abs(value)}; }

// Tail order of an integrand h = (combination of g, g', g'' squares) x^power,
// for g of algebraic order a: each derivative drops one order.
TailHint integrand_hint(const TailHint& g_decay, double order_if_algebraic) {
  if (g_decay.is_exponential) return TailHint::exponential();
  return TailHint::algebraic(order_if_algebraic);
}

void require_convergent(const TailHint& hint, const char* what) {
  if (!hint.is_exponential && !(hint.order < -1.0))
    throw std::invalid_argument(std::string(what) +
                                ": integral does not converge for the profile's decay hint");
}

Estimate p_beta_estimate(const RadialProfile& g, const GeneralizedParams& params, int beta,
                         double tol) {
  if (beta != 0 && beta != 1) throw std::invalid_argument("p_beta: beta must be 0 or 1");
  const double mu = params.mu, eps = params.eps;
  if (g.poly_exp) {
    const PolyParts parts = poly_parts(*g.poly_exp);
    double v = poly_weighted_integral(poly_mul(parts.p1, parts.p1), mu + beta, parts.rate);
    if (beta == 1)
      v -= eps * poly_weighted_integral(poly_mul(parts.p0, parts.p0), mu - 1.0, parts.rate);
    return exact_estimate(v);
  }
  const double a = g.decay.order;
  const TailHint hint = integrand_hint(g.decay, 2.0 * a + mu + beta - 2.0);
  Integrand ig{[&g, mu, eps, beta](double x) {
                 const double d = g.d1(x);
                 double h = x * x * d * d;
                 if (beta == 1) {
                   const double v = g.value(x);
                   h -= eps * v * v;
                 }
                 return h * std::pow(x, mu + beta - 2.0);
               },
               hint};
  return run_adaptive(ig, tol, "p_beta");
}

Estimate q_form_estimate(const RadialProfile& g, const GeneralizedParams& params, double tol) {
  const double mu = params.mu;
  if (g.poly_exp) {
    const PolyParts parts = poly_parts(*g.poly_exp);
    return exact_estimate(
        poly_weighted_integral(poly_mul(parts.p2, parts.p2), mu + 1.0, parts.rate));
  }
  const double a = g.decay.order;
  const TailHint hint = integrand_hint(g.decay, 2.0 * a + mu - 3.0);
  Integrand ig{[&g, mu](double x) {
                 const double d = g.d2(x);
                 return d * d * std::pow(x, mu + 1.0);
               },
               hint};
  return run_adaptive(ig, tol, "q_form");
}

Estimate i_residual_estimate(const RadialProfile& g, const GeneralizedParams& params, double tol) {
  const double mu = params.mu, b = params.b;
  if (g.poly_exp) {
    const PolyParts parts = poly_parts(*g.poly_exp);
    // x p2 + (x + mu) p1 + (mu - b) p0
    Poly q = poly_shift_mul_x(parts.p2);
    q = poly_axpy(1.0, poly_shift_mul_x(parts.p1), q);
    q = poly_axpy(mu, parts.p1, q);
    q = poly_axpy(mu - b, parts.p0, q);
    return exact_estimate(poly_weighted_integral(poly_mul(q, q), mu - 1.0, parts.rate));
  }
  const double a = g.decay.order;
  const TailHint hint = integrand_hint(g.decay, 2.0 * a + mu - 1.0);
  Integrand ig{[&g, mu, b](double x) {
                 const double resid = x * g.d2(x) + (x + mu) * g.d1(x) + (mu - b) * g.value(x);
                 return resid * resid * std::pow(x, mu - 1.0);
               },
               hint};
  return run_adaptive(ig, tol, "identity_residual");
}

}  // namespace

RadialProfile profile_from_poly_exp(std::vector<double> coeffs, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("profile_from_poly_exp: rate must be > 0");
  if (coeffs.empty()) coeffs = {0.0};
  PolyExpForm form{rate, std::move(coeffs)};
  const PolyParts parts = poly_parts(form);
  RadialProfile g;
  g.value = [p = parts.p0, r = form.rate](double x) { return poly_eval(p, x) * std::exp(-r * x); };
  g.d1 = [p = parts.p1, r = form.rate](double x) { return poly_eval(p, x) * std::exp(-r * x); };
  g.d2 = [p = parts.p2, r = form.rate](double x) { return poly_eval(p, x) * std::exp(-r * x); };
  g.decay = TailHint::exponential();
  g.poly_exp = std::move(form);
  return g;
}

RadialProfile profile_from_extremal(const ExtremalProfile& g0) {
  RadialProfile g;
  g.value = [g0](double x) { return g0.value(x); };
  g.d1 = [g0](double x) { return g0.deriv1(x); };
  g.d2 = [g0](double x) { return g0.deriv2(x); };
  g.decay = TailHint::algebraic(tail_exponent(g0.params()));
  return g;
}

RadialProfile rescale_profile(const RadialProfile& g, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rescale_profile: lambda must be > 0");
  RadialProfile out;
  out.value = [v = g.value, lambda](double x) { return v(lambda * x); };
  out.d1 = [d = g.d1, lambda](double x) { return lambda * d(lambda * x); };
  out.d2 = [d = g.d2, lambda](double x) { return lambda * lambda * d(lambda * x); };
  out.decay = g.decay;
  if (g.poly_exp) {
    PolyExpForm form{g.poly_exp->rate * lambda, g.poly_exp->coeffs};
    double pw = 1.0;
    for (std::size_t k = 0; k < form.coeffs.size(); ++k) {
      form.coeffs[k] *= pw;
      pw *= lambda;
    }
    out.poly_exp = std::move(form);
  }
  return out;
}

double p_beta(const RadialProfile& g, const GeneralizedParams& params, int beta, double tol) {
  return p_beta_estimate(g, params, beta, tol).value;
}

double q_form(const RadialProfile& g, const GeneralizedParams& params, double tol) {
  return q_form_estimate(g, params, tol).value;
}

double identity_residual(const RadialProfile& g, const GeneralizedParams& params, double tol) {
  const Estimate i = i_residual_estimate(g, params, tol);
  if (i.value < -tol)
    throw VerificationError("identity_residual: integral of a square came out negative");
  const double q = q_form(g, params, tol);
  const double p1 = p_beta(g, params, 1, tol);
  const double p0 = p_beta(g, params, 0, tol);
  const double rhs = q + p1 - params.c * p0;
  if (std::abs(i.value - rhs) > 10.0 * tol * (1.0 + std::abs(i.value)))
    throw VerificationError("identity_residual: I[g] disagrees with Q + P1 - c P0");
  return i.value;
}

FunctionalReport r_quotients(const RadialProfile& g, const GeneralizedParams& params, double tol) {
  FunctionalReport rep;
  rep.p0 = p_beta_estimate(g, params, 0, tol);
  if (!(rep.p0.value > tol))
    throw std::domain_error("r_quotients: P0 <= tol, profile is degenerate (nearly constant)");
  rep.p1 = p_beta_estimate(g, params, 1, tol);
  rep.q = q_form_estimate(g, params, tol);
  if (rep.q.value < -tol)
    throw VerificationError("r_quotients: Q[g] negative beyond tolerance");
  rep.i_residual = i_residual_estimate(g, params, tol);
  if (rep.i_residual.value < -tol)
    throw VerificationError("r_quotients: I[g] negative beyond tolerance");
  const double rhs = rep.q.value + rep.p1.value - params.c * rep.p0.value;
  if (std::abs(rep.i_residual.value - rhs) >
      10.0 * tol * (1.0 + std::abs(rep.i_residual.value)))
    throw VerificationError("r_quotients: identity cross-check failed");
  rep.r = rep.q.value * rep.p1.value / (rep.p0.value * rep.p0.value);
  rep.r_tilde = (rep.q.value + rep.p1.value) / rep.p0.value;
  return rep;
}

BalanceResult balance_scaling(const RadialProfile& g, const GeneralizedParams& params,
                              double tol) {
  const double q = q_form(g, params, tol);
  const double p1 = p_beta(g, params, 1, tol);
  if (!(q > 0.0) || !(p1 > 0.0))
    throw std::domain_error("balance_scaling: requires Q > 0 and P1 > 0");
  const double lambda_star = std::sqrt(p1 / q);
  const RadialProfile gs = rescale_profile(g, lambda_star);
  const double qs = q_form(gs, params, tol);
  const double p1s = p_beta(gs, params, 1, tol);
  const double p0s = p_beta(gs, params, 0, tol);
  if (!(p0s > tol)) throw std::domain_error("balance_scaling: rescaled profile is degenerate");
  return {lambda_star, (qs + p1s) / p0s};
}

double dmu_norm(const RadialProfile& g, double mu, double tol) {
  if (!(mu > 0.0)) throw std::invalid_argument("dmu_norm: mu must be > 0");
  if (g.poly_exp) {
    const PolyParts parts = poly_parts(*g.poly_exp);
    const Poly d1sq = poly_mul(parts.p1, parts.p1);
    const double q = poly_weighted_integral(poly_mul(parts.p2, parts.p2), mu + 1.0, parts.rate);
    const double grad = poly_weighted_integral(d1sq, mu + 1.0, parts.rate) +
                        poly_weighted_integral(d1sq, mu, parts.rate);
    const double mass =
        poly_weighted_integral(poly_mul(parts.p0, parts.p0), mu - 1.0, parts.rate);
    return std::sqrt(4.0 * q + grad + mass);
  }
  const double a = g.decay.order;
  const TailHint hint = integrand_hint(g.decay, 2.0 * a + mu - 1.0);
  const double q =
      run_adaptive({[&g, mu](double x) { return g.d2(x) * g.d2(x) * std::pow(x, mu + 1.0); },
                    integrand_hint(g.decay, 2.0 * a + mu - 3.0)},
                   tol, "dmu_norm")
          .value;
  const double grad = run_adaptive({[&g, mu](double x) {
                                      const double d = g.d1(x);
                                      return d * d * (x + 1.0) * std::pow(x, mu);
                                    },
                                    hint},
                                   tol, "dmu_norm")
                          .value;
  const double mass = run_adaptive({[&g, mu](double x) {
                                      const double v = g.value(x);
                                      return v * v * std::pow(x, mu - 1.0);
                                    },
                                    hint},
                                   tol, "dmu_norm")
                          .value;
  return std::sqrt(4.0 * q + grad + mass);
}

}  // namespace solhup
