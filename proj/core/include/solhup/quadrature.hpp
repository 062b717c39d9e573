#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace solhup {

enum class RuleKind { gauss_laguerre_generalized, gauss_legendre_panel, gauss_jacobi_unit };

/// Nodes and weights of a weighted quadrature rule. For the generalized
/// Gauss-Laguerre kind the weight is x^alpha e^{-x} on (0, inf); an n-node
/// rule integrates polynomials up to degree 2n-1 exactly and its weights sum
/// to Gamma(alpha+1). For the Legendre kind the interval is (-1, 1).
struct QuadratureRule {
  RuleKind kind;
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  double sum_weights() const;
};

/// Golub-Welsch construction from the symmetric tridiagonal Jacobi matrix of
/// the generalized Laguerre recurrence. Requires alpha > -1, 1 <= n <= 256.
QuadratureRule gauss_laguerre_rule(double alpha, int n);

/// Gauss-Legendre rule on (-1, 1), by Newton iteration on the three-term
/// recurrence. 1 <= n <= 1024.
QuadratureRule gauss_legendre_rule(int n);

/// Gauss-Jacobi rule for the weight t^beta on (0, 1), beta > -1; absorbs a
/// fractional power at the left endpoint exactly. Golub-Welsch construction.
QuadratureRule gauss_jacobi01_rule(double beta, int n);

struct IntegralResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

/// Non-convergence of the adaptive integrator, carrying the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, IntegralResult best_in)
      : std::runtime_error(what), best(best_in) {}
  IntegralResult best;
};

/// How an integrand on (0, inf) decays. Algebraic order p means
/// |f(x)| <= C x^p for large x (p < -1 required); exponential means it
/// eventually decays faster than any power.
struct TailHint {
  bool is_exponential = false;
  double order = 0.0;

  static TailHint algebraic(double order) { return TailHint{false, order}; }
  static TailHint exponential() { return TailHint{true, 0.0}; }
};

/// Adaptive quadrature of f over (0, inf) to absolute tolerance tol.
///
/// The integral is mapped by x = e^t and integrated over a finite t-window
/// with bisection-adaptive 15-point Gauss-Legendre panels. The upper cutoff
/// comes from the analytic bound C x^{order+1} / |order+1| < tol/20 with the
/// amplitude C fitted from f at two large abscissae; the lower cutoff from a
/// sampled bound on x * sup|f| near zero. The returned abs_error_estimate
/// adds panel disagreements and both cutoff bounds.
///
/// Throws std::invalid_argument for an algebraic order >= -1 and
/// QuadratureError (best estimate attached) past panel depth 40.
IntegralResult integrate_halfline(const std::function<double(double)>& f, double tol,
                                  TailHint tail);

/// Overload taking a bare algebraic tail order.
inline IntegralResult integrate_halfline(const std::function<double(double)>& f, double tol,
                                         double tail_order) {
  return integrate_halfline(f, tol, TailHint::algebraic(tail_order));
}

}  // namespace solhup
