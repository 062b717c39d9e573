#pragma once

#include "solhup/constants.hpp"

namespace solhup {

/// Rising factorial (q)_k = q (q+1) ... (q+k-1), with (q)_0 = 1.
double pochhammer(double q, unsigned k);

/// Kummer's confluent hypergeometric function
///   1F1(b, mu, x) = sum_k (b)_k / (mu)_k * x^k / k!
/// evaluated by the direct power series with the term recurrence
///   t_{k+1} = t_k * (b+k) x / ((mu+k)(k+1)).
///
/// Requires mu > 0 and x >= 0, where every term is positive, so the sum has
/// no cancellation and the relative error is a few ulp times the term count.
/// The series stops once |t_k| <= 1e-15 * partial_sum.
///
/// Throws std::range_error when a running term would exceed 1e290 (the value
/// itself grows like e^x and would leave double range) and std::runtime_error
/// if 10000 terms do not reach the stopping rule.
double kummer_1f1(double b, double mu, double x);

/// d/dx or d2/dx2 of 1F1(b, mu, x), via the contiguous-parameter identity
/// d/dx 1F1(b, mu, x) = (b/mu) 1F1(b+1, mu+1, x) applied once or twice.
/// order must be 1 or 2.
double kummer_1f1_derivative(double b, double mu, double x, int order);

/// Algebraic decay order of the extremal profile: as x -> infinity,
/// e^{-x} 1F1(b, mu, x) = O(x^{b-mu}). Returns b - mu < 0.
double tail_exponent(const GeneralizedParams& params);

/// The extremal radial profile
///   g0(x) = e^{-lambda x} 1F1(b, mu, lambda x),   g0(0) = 1,
/// with first and second derivatives from the exact identities
///   d/dz [e^{-z} 1F1(b, c, z)] = -((c-b)/c) e^{-z} 1F1(b, c+1, z).
///
/// g0 > 0 everywhere and decays like (lambda x)^{b - mu}. Evaluation is valid
/// on the whole half line: below z = 400 the product e^{-z} * series is used;
/// above, the large-argument expansion of e^{-z} 1F1 (which is accurate to
/// machine precision there). Immutable after construction.
class ExtremalProfile {
 public:
  ExtremalProfile(const GeneralizedParams& params, double lambda);

  double value(double x) const;
  double deriv1(double x) const;
  double deriv2(double x) const;

  double scale() const { return lambda_; }
  const GeneralizedParams& params() const { return params_; }

 private:
  GeneralizedParams params_;
  double lambda_;
};

namespace detail {
/// e^{-z} * 1F1(a, c, z) for z >= 0, stable for arbitrarily large z.
double exp_weighted_1f1(double a, double c, double z);
}  // namespace detail

}  // namespace solhup
