#include "solhup/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace solhup {

GeneralizedParams::GeneralizedParams(double mu_in, double eps_in) : mu(mu_in), eps(eps_in) {
  if (!(mu > 0.0)) throw std::invalid_argument("GeneralizedParams: mu must be > 0");
  if (!(eps > 0.0) || !(eps < 0.25 * mu * mu))
    throw std::invalid_argument("GeneralizedParams: need 0 < eps < mu^2/4");
  const double disc = std::sqrt(mu * mu - 4.0 * eps);
  b = 0.5 * (mu - disc);
  c = disc + 1.0;
}

ProblemParams::ProblemParams(int N, int nu) : dim(N), degree(nu) {
  if (N < 3) throw std::invalid_argument("ProblemParams: N must be >= 3");
  if (nu < 1) throw std::invalid_argument("ProblemParams: nu must be >= 1");
  mu = 0.5 * N + nu;
  eps = 0.5 * (nu + N - 2);
  alpha_nu = static_cast<double>(nu) * (nu + N - 2);
  const double disc = std::sqrt(mu * mu - 4.0 * eps);
  b = 0.5 * (mu - disc);
  c = disc + 1.0;
}

double best_constant_unconstrained(int N) {
  if (N < 1) throw std::invalid_argument("best_constant_unconstrained: N must be >= 1");
  return 0.25 * static_cast<double>(N) * N;
}

double best_constant_curlfree(int N) {
  if (N < 1) throw std::invalid_argument("best_constant_curlfree: N must be >= 1");
  const double m = N + 2.0;
  return 0.25 * m * m;
}

double best_constant_toroidal(int N) {
  if (N < 3) throw std::invalid_argument("best_constant_toroidal: N must be >= 3");
  const double m = N + 2.0;
  return 0.25 * m * m;
}

double best_constant_poloidal(int N, int nu) {
  if (N < 3) throw std::invalid_argument("best_constant_poloidal: N must be >= 3");
  if (nu < 1) throw std::invalid_argument("best_constant_poloidal: nu must be >= 1");
  const double base = 2.0 * nu + N - 2.0;
  const double root = std::sqrt(base * base - 4.0 * (N - 3.0)) + 2.0;
  return 0.25 * root * root;
}

double best_constant_solenoidal(int N) {
  if (N < 3) throw std::invalid_argument("best_constant_solenoidal: N must be >= 3");
  const double root = std::sqrt((N - 2.0) * (N - 2.0) + 8.0) + 2.0;
  return 0.25 * root * root;
}

}  // namespace solhup
