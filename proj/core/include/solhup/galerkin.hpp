#pragma once

#include <string>
#include <utility>
#include <vector>

#include "solhup/constants.hpp"
#include "solhup/functionals.hpp"
#include "solhup/linalg.hpp"

namespace solhup {

/// Laguerre trial functions phi_k(x) = e^{-x} L_k^{(mu)}(2x), k = 0..K-1,
/// with analytic first and second derivatives. 2 <= K <= 64.
std::vector<RadialProfile> build_basis(int K, double mu);

/// Which subspace assemble() minimizes over.
///
/// laguerre: span of build_basis(K, mu) alone. The Rayleigh minimum then
/// converges to c only algebraically, like K^{-(c-1)}: every member decays
/// exponentially while the true minimizer has an algebraic tail x^{b-mu}.
///
/// laguerre_tail (default): the last min(4, K-2) members are replaced by the
/// tail functions (1+x)^{b-mu-j}, j = 0..3, which carry the known decay
/// order. The minimum then reaches c to ~1e-7 by K = 25. Both spaces are
/// nested in K, so the one-sided bound and monotonicity hold either way.
enum class TrialSpace { laguerre, laguerre_tail };

/// Assembled quadratic forms of the Rayleigh quotient (Q + P1)/P0 over the
/// trial space: A is the Q + P1 bilinear form, B the P0 form (positive
/// definite). After min_eigenpair, lambda_min and the B-normalized
/// coefficient vector are filled in.
struct GalerkinSystem {
  int K = 0;
  GeneralizedParams params{3.0, 1.0};
  TrialSpace space = TrialSpace::laguerre_tail;
  int n_laguerre = 0;  // leading Laguerre block size; K - n_laguerre tails
  SymMatrix A, B;
  double lambda_min = 0.0;
  std::vector<double> coeffs;
};

GalerkinSystem assemble(int K, const GeneralizedParams& params,
                        TrialSpace space = TrialSpace::laguerre_tail);

/// Solve A v = lambda B v for the smallest pair: diagonal scaling, Cholesky
/// reduction of B, cyclic Jacobi on the reduced matrix (off-diagonal norm
/// <= 1e-13 relative), back-substitution. The eigenvector is B-normalized
/// with a deterministic sign. Results are also stored into the system.
std::pair<double, std::vector<double>> min_eigenpair(GalerkinSystem& system);

/// The minimizer as a RadialProfile (coefficient-expanded trial function).
/// Requires min_eigenpair to have run.
RadialProfile expand_profile(const GalerkinSystem& system);

struct ConvergenceRow {
  int K;
  double lambda_min;
  double lambda_min_sq;
  double gap;  // lambda_min - c
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double c_theory = 0.0;
  bool converged = false;

  /// CSV with columns K, lambda_min, lambda_min_sq, gap.
  std::string to_csv() const;
};

/// Sweep K = 2, 4, ..., K_max (K_max always included), stopping early once
/// lambda_min(K) - c <= target_tol. The lambda_min column must be
/// nonincreasing and never dip below c - 1e-12; violations throw
/// VerificationError. An unreached target returns converged = false.
ConvergenceTable converge_constant(const GeneralizedParams& params, int K_max, double target_tol,
                                   TrialSpace space = TrialSpace::laguerre_tail);

}  // namespace solhup
