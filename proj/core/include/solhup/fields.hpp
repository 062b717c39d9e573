#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "solhup/constants.hpp"
#include "solhup/kummer.hpp"

namespace solhup {

using Point3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// u(x) = (row_0 . x, row_1 . x, row_2 . x) e^{-c |x|^2} on R^3 with an
/// antisymmetric coefficient matrix, stored by its strict upper triangle so
/// antisymmetry holds exactly. Tangent to every centered sphere (x . u = 0)
/// and divergence-free.
class ToroidalExtremal {
 public:
  ToroidalExtremal(double m01, double m02, double m12, double c_decay);

  Point3 operator()(const Point3& x) const;
  /// grad[k][l] = d u_k / d x_l, analytic.
  Mat3 gradient(const Point3& x) const;

  const Mat3& matrix() const { return m_; }
  double decay() const { return c_; }

 private:
  Mat3 m_;
  double c_;
};

/// The axisymmetric divergence-free field on R^N (N >= 3) generated from the
/// potential (axis . x / |x|) g0(|x|^2), with g0 the extremal radial profile
/// for (mu, eps) = (N/2 + 1, (N-1)/2). In spherical form, with Y = axis . sigma
/// and h(r) = g0(r^2):
///   u = -(N-1) Y h sigma - (r h' + (N-1) h) (axis - Y sigma).
/// Defined for x != 0 (u extends continuously to the origin).
class PoloidalExtremal {
 public:
  PoloidalExtremal(int N, std::vector<double> axis, double lambda);

  std::vector<double> operator()(std::span<const double> x) const;

  int dim() const { return n_; }
  const std::vector<double>& axis() const { return axis_; }
  const ProblemParams& params() const { return params_; }
  const ExtremalProfile& profile() const { return profile_; }

 private:
  int n_;
  std::vector<double> axis_;
  ProblemParams params_;
  ExtremalProfile profile_;
};

using FieldFn = std::function<std::vector<double>(std::span<const double>)>;

/// Central-difference divergence sum_k (u_k(x + h e_k) - u_k(x - h e_k)) / 2h.
double divergence_fd(const FieldFn& u, std::span<const double> x, double h);

struct QuotientReport {
  double integral_grad = 0.0;      // int |grad u|^2
  double integral_weighted = 0.0;  // int |u|^2 |x|^2
  double integral_l2 = 0.0;        // int |u|^2
  double quotient = 0.0;           // grad * weighted / l2^2
  double richardson_disagreement = 0.0;
  int grid_n = 0;
  double box_l = 0.0;

  std::string to_json() const;
};

/// Tensor-product Gauss-Legendre quadrature of the three integrals over
/// [-L, L]^3, with the gradient analytic. Requires c L^2 >= 20 so the
/// Gaussian tail is negligible. The quotient is recomputed at grid_n + 8;
/// a disagreement beyond 1e-4 throws VerificationError.
QuotientReport quotient_toroidal_3d(const ToroidalExtremal& field, int grid_n, double box_l);

/// The quotient of the extremal poloidal field through the exact reduction
/// to the one-dimensional functionals: quotient = 4 Q[g0] P1[g0] / P0[g0]^2,
/// with the three field integrals reported for a unit axis. nu must be 1.
QuotientReport quotient_poloidal_1d(const ProblemParams& params, double lambda, double tol);

struct SphereReduction {
  double lhs;  // (1/alpha_1) int_{S^2} |u(r sigma)|^2 dsigma, by quadrature
  double rhs;  // (alpha_1 h^2 + (r h' + 2h)^2) * (4 pi / 3) |axis|^2
};

/// Fixed-radius check tying the N-dimensional field to the 1D functionals
/// (N = 3 only). The sphere grid is Gauss-Legendre in cos(theta) times a
/// uniform trapezoid in phi. Requesting nu != 1 is rejected: degree 0 has no
/// zero-mean potential, higher degrees are out of scope.
SphereReduction sphere_reduction_check(const PoloidalExtremal& field, double r, int n_theta,
                                       int n_phi, int nu = 1);

struct GaussianQuotient {
  double integral_grad;
  double integral_weighted;
  double integral_l2;
  double quotient;  // (N+2)^2/4 identically; the closed forms cancel
};

/// Closed-form integrals for the scalar extremal f(x) = sum_k w_k x_k
/// e^{-B |x|^2}:
///   int |grad f|^2 = (N+2)/4 (pi/2B)^{N/2} S,
///   int f^2 |x|^2  = (N+2)/(4 (2B)^2) (pi/2B)^{N/2} S,
///   int f^2        = 1/(4B) (pi/2B)^{N/2} S,      S = sum w_k^2.
GaussianQuotient scalar_gaussian_quotient(int N, double b0, std::span<const double> weights);

}  // namespace solhup
