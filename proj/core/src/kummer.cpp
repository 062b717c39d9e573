#include "solhup/kummer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace solhup {

namespace {

constexpr double kRelTol = 1e-15;
constexpr double kTermOverflow = 1e290;
constexpr int kMaxTerms = 10000;
constexpr double kAsymSwitch = 400.0;  // both branches are accurate near here

void check_args(double mu, double x) {
  if (!(mu > 0.0)) throw std::invalid_argument("kummer_1f1: mu must be > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("kummer_1f1: x must be >= 0");
}

}  // namespace

double pochhammer(double q, unsigned k) {
  double acc = 1.0;
  for (unsigned i = 0; i < k; ++i) acc *= q + static_cast<double>(i);
  return acc;
}

double kummer_1f1(double b, double mu, double x) {
  check_args(mu, x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (b + k) * x / ((mu + k) * (k + 1.0));
    if (std::abs(term) > kTermOverflow)
      throw std::range_error("kummer_1f1: series term exceeds representable range");
    sum += term;
    if (std::abs(term) <= kRelTol * std::abs(sum)) return sum;
  }
  throw std::runtime_error("kummer_1f1: series did not converge within 10000 terms");
}

double kummer_1f1_derivative(double b, double mu, double x, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("kummer_1f1_derivative: order must be 1 or 2");
  if (order == 1) return b / mu * kummer_1f1(b + 1.0, mu + 1.0, x);
  return b * (b + 1.0) / (mu * (mu + 1.0)) * kummer_1f1(b + 2.0, mu + 2.0, x);
}

double tail_exponent(const GeneralizedParams& params) { return params.b - params.mu; }

namespace detail {

// Large-argument expansion: e^{-z} 1F1(a,c,z) ~ Gamma(c)/Gamma(a) z^{a-c}
// * sum_j (c-a)_j (1-a)_j / (j! z^j). The series is asymptotic; terms shrink
// until j ~ z, and truncating at the first term below 1e-18 leaves an error
// far under double precision for z >= 250.
double exp_weighted_1f1_asym(double a, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j <= 64; ++j) {
    term *= (c - a + j - 1.0) * (1.0 - a + j - 1.0) / (j * z);
    const double prev = sum;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    if (std::abs(term) > std::abs(prev)) break;  // past the optimal truncation
  }
  return std::tgamma(c) / std::tgamma(a) * std::pow(z, a - c) * sum;
}

double exp_weighted_1f1(double a, double c, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("exp_weighted_1f1: z must be >= 0");
  if (z < kAsymSwitch) return std::exp(-z) * kummer_1f1(a, c, z);
  return exp_weighted_1f1_asym(a, c, z);
}

}  // namespace detail

ExtremalProfile::ExtremalProfile(const GeneralizedParams& params, double lambda)
    : params_(params), lambda_(lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ExtremalProfile: lambda must be > 0");
}

double ExtremalProfile::value(double x) const {
  return detail::exp_weighted_1f1(params_.b, params_.mu, lambda_ * x);
}

double ExtremalProfile::deriv1(double x) const {
  const double mu = params_.mu;
  return -lambda_ * (mu - params_.b) / mu *
         detail::exp_weighted_1f1(params_.b, mu + 1.0, lambda_ * x);
}

double ExtremalProfile::deriv2(double x) const {
  const double mu = params_.mu;
  const double b = params_.b;
  return lambda_ * lambda_ * (mu - b) * (mu + 1.0 - b) / (mu * (mu + 1.0)) *
         detail::exp_weighted_1f1(b, mu + 2.0, lambda_ * x);
}

}  // namespace solhup
