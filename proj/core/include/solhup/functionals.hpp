#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "solhup/constants.hpp"
#include "solhup/kummer.hpp"
#include "solhup/quadrature.hpp"

namespace solhup {

/// Marks a profile of the closed form p(x) e^{-rate x} with p polynomial
/// (ascending monomial coefficients). Functionals on such profiles are
/// integrated exactly by generalized Gauss-Laguerre rules.
struct PolyExpForm {
  double rate;
  std::vector<double> coeffs;
};

/// A test function g on (0, inf) together with its first two derivatives and
/// a decay hint used to budget quadrature truncation. Derivatives are
/// analytic, not finite differences: Q integrates (g'')^2 under a growing
/// weight where difference noise would be amplified.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  TailHint decay;
  std::optional<PolyExpForm> poly_exp;
};

RadialProfile profile_from_poly_exp(std::vector<double> coeffs, double rate);
RadialProfile profile_from_extremal(const ExtremalProfile& g0);
/// g_lambda(x) = g(lambda x), with derivatives and decay carried along.
RadialProfile rescale_profile(const RadialProfile& g, double lambda);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct FunctionalReport {
  Estimate p0, p1, q, i_residual;
  double r = 0.0;        // Q P1 / P0^2
  double r_tilde = 0.0;  // (Q + P1) / P0
};

/// P_beta[g] = int_0^inf (x^2 (g')^2 - beta eps g^2) x^{mu+beta-2} dx,
/// beta in {0, 1}. For beta = 0 this is int (g')^2 x^mu >= 0.
double p_beta(const RadialProfile& g, const GeneralizedParams& params, int beta,
              double tol = 1e-10);

/// Q[g] = int_0^inf (g'')^2 x^{mu+1} dx >= 0.
double q_form(const RadialProfile& g, const GeneralizedParams& params, double tol = 1e-10);

/// I[g] = int_0^inf (x g'' + (x+mu) g' + (mu-b) g)^2 x^{mu-1} dx, checked
/// against Q[g] + P1[g] - c P0[g] to 10*tol*(1+|I|). A mismatch throws
/// VerificationError; this is the module's central cross-check.
double identity_residual(const RadialProfile& g, const GeneralizedParams& params,
                         double tol = 1e-10);

/// All four functionals plus the two quotients. Throws std::domain_error if
/// P0 <= tol (profile is nearly constant; the quotients exclude constants).
FunctionalReport r_quotients(const RadialProfile& g, const GeneralizedParams& params,
                             double tol = 1e-10);

struct BalanceResult {
  double lambda_star;       // sqrt(P1/Q), the scale with Q[g_l] = P1[g_l]
  double r_tilde_balanced;  // R~ of the rescaled profile; equals 2 sqrt(R[g])
};

/// Rescale g to the balanced point. Under g_l(x) = g(l x) the forms scale as
/// Q -> l^{2-mu} Q, P1 -> l^{-mu} P1, P0 -> l^{1-mu} P0, so
/// R~[g_l] = (l Q + P1/l)/P0 is minimized at l = sqrt(P1/Q) with value
/// 2 sqrt(R[g]). Throws std::domain_error unless Q > 0 and P1 > 0.

BalanceResult balance_scaling(const RadialProfile& g, const GeneralizedParams& params,
                              double tol = 1e-10);

/// sqrt( 4 Q[g] + int (g')^2 (x+1) x^mu + int g^2 x^{mu-1} ).
double dmu_norm(const RadialProfile& g, double mu, double tol = 1e-10);

}  // namespace solhup
