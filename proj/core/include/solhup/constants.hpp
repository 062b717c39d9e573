#pragma once

namespace solhup {

/// Continuous relaxation of the problem parameters: mu > 0 and
/// 0 < eps < mu^2/4, with the derived quantities
///   b = (mu - sqrt(mu^2 - 4 eps)) / 2   and   c = sqrt(mu^2 - 4 eps) + 1.
struct GeneralizedParams {
  double mu;
  double eps;
  double b;
  double c;

  GeneralizedParams(double mu, double eps);
};

/// Parameters attached to dimension N >= 3 and spherical-harmonic degree
/// nu >= 1:  mu = N/2 + nu,  eps = (nu + N - 2)/2,  alpha_nu = nu(nu + N - 2).
/// Validation happens once here; downstream code trusts the invariants.
struct ProblemParams {
  int dim;     // N
  int degree;  // nu
  double mu;
  double eps;
  double alpha_nu;
  double b;
  double c;

  ProblemParams(int N, int nu);

  GeneralizedParams generalized() const { return GeneralizedParams(mu, eps); }
};

/// N^2/4, the sharp constant with no constraint on the field. N >= 1.
double best_constant_unconstrained(int N);

/// (N+2)^2/4, the sharp constant for gradient (curl-free) fields. N >= 1.
double best_constant_curlfree(int N);

/// (N+2)^2/4, the sharp constant for toroidal fields. N >= 3.
double best_constant_toroidal(int N);

/// ((sqrt((2 nu + N - 2)^2 - 4(N-3)) + 2)^2) / 4, the sharp constant for
/// poloidal fields of harmonic degree nu. N >= 3, nu >= 1.
double best_constant_poloidal(int N, int nu);

/// ((sqrt((N-2)^2 + 8) + 2)^2) / 4, the sharp constant for divergence-free
/// fields; equals min(poloidal(N,1), toroidal(N)). N >= 3.
double best_constant_solenoidal(int N);

}  // namespace solhup
