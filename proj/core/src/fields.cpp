#include "solhup/fields.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "solhup/errors.hpp"
#include "solhup/functionals.hpp"
#include "solhup/quadrature.hpp"

namespace solhup {

namespace {

double dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm_sq(std::span<const double> x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return s;
}

}  // namespace

ToroidalExtremal::ToroidalExtremal(double m01, double m02, double m12, double c_decay)
    : c_(c_decay) {
  if (!(c_decay > 0.0)) throw std::invalid_argument("ToroidalExtremal: c_decay must be > 0");
  m_ = {{{0.0, m01, m02}, {-m01, 0.0, m12}, {-m02, -m12, 0.0}}};
}

Point3 ToroidalExtremal::operator()(const Point3& x) const {
  const double e = std::exp(-c_ * dot3(x, x));
  Point3 u;
  for (int k = 0; k < 3; ++k) u[k] = (m_[k][0] * x[0] + m_[k][1] * x[1] + m_[k][2] * x[2]) * e;
  return u;
}

Mat3 ToroidalExtremal::gradient(const Point3& x) const {
  const double e = std::exp(-c_ * dot3(x, x));
  Mat3 g;
  for (int k = 0; k < 3; ++k) {
    const double mkx = m_[k][0] * x[0] + m_[k][1] * x[1] + m_[k][2] * x[2];
    for (int l = 0; l < 3; ++l) g[k][l] = (m_[k][l] - 2.0 * c_ * x[l] * mkx) * e;
  }
  return g;
}

PoloidalExtremal::PoloidalExtremal(int N, std::vector<double> axis, double lambda)
    : n_(N),
      axis_(std::move(axis)),
      params_(N, 1),
      profile_(params_.generalized(), lambda) {
  if (static_cast<int>(axis_.size()) != N)
    throw std::invalid_argument("PoloidalExtremal: axis dimension must equal N");
  if (!(norm_sq(axis_) > 0.0))
    throw std::invalid_argument("PoloidalExtremal: axis must be nonzero");
}

std::vector<double> PoloidalExtremal::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("PoloidalExtremal: point dimension mismatch");
  const double r2 = norm_sq(x);
  if (!(r2 > 0.0)) throw std::invalid_argument("PoloidalExtremal: undefined at the origin");
  const double r = std::sqrt(r2);

  const double h = profile_.value(r2);
  const double rhp = 2.0 * r2 * profile_.deriv1(r2);  // r h'(r)
  double y = 0.0;                                     // axis . sigma
  for (int k = 0; k < n_; ++k) y += axis_[k] * x[k] / r;

  const double radial = -(n_ - 1.0) * y * h;
  const double tangential = -(rhp + (n_ - 1.0) * h);
  std::vector<double> u(n_);
  for (int k = 0; k < n_; ++k) {
    const double sigma_k = x[k] / r;
    u[k] = radial * sigma_k + tangential * (axis_[k] - y * sigma_k);
  }
  return u;
}

double divergence_fd(const FieldFn& u, std::span<const double> x, double h) {
  const int n = static_cast<int>(x.size());
  std::vector<double> p(x.begin(), x.end());
  double div = 0.0;
  for (int k = 0; k < n; ++k) {
    const double xk = p[k];
    p[k] = xk + h;
    const double up = u(p)[k];
    p[k] = xk - h;
    const double um = u(p)[k];
    p[k] = xk;
    div += (up - um) / (2.0 * h);
  }
  return div;
}

std::string QuotientReport::to_json() const {
  nlohmann::ordered_json j;
  j["integral_grad"] = integral_grad;
  j["integral_weighted"] = integral_weighted;
  j["integral_l2"] = integral_l2;
  j["quotient"] = quotient;
  j["richardson_disagreement"] = richardson_disagreement;
  j["grid_n"] = grid_n;
  j["box_l"] = box_l;
  return j.dump();
}

namespace {

struct BoxIntegrals {
  double grad, weighted, l2;
  double quotient() const { return grad * weighted / (l2 * l2); }
};

BoxIntegrals toroidal_box_integrals(const ToroidalExtremal& field, int grid_n, double box_l) {
  const QuadratureRule rule = gauss_legendre_rule(grid_n);
  std::vector<double> xs(grid_n), ws(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    xs[i] = box_l * rule.nodes[i];
    ws[i] = box_l * rule.weights[i];
  }
  BoxIntegrals acc{0.0, 0.0, 0.0};
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      for (int k = 0; k < grid_n; ++k) {
        const Point3 x{xs[i], xs[j], xs[k]};
        const double w = ws[i] * ws[j] * ws[k];
        const Point3 u = field(x);
        const Mat3 g = field.gradient(x);
        const double u2 = dot3(u, u);
        double g2 = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) g2 += g[a][b] * g[a][b];
        acc.l2 += w * u2;
        acc.weighted += w * u2 * dot3(x, x);
        acc.grad += w * g2;
      }
    }
  }
  return acc;
}

}  // namespace

QuotientReport quotient_toroidal_3d(const ToroidalExtremal& field, int grid_n, double box_l) {
  if (grid_n < 8) throw std::invalid_argument("quotient_toroidal_3d: grid_n must be >= 8");
  if (!(field.decay() * box_l * box_l >= 20.0))
    throw std::invalid_argument("quotient_toroidal_3d: need c_decay * box_L^2 >= 20");

  const BoxIntegrals coarse = toroidal_box_integrals(field, grid_n, box_l);
  const BoxIntegrals fine = toroidal_box_integrals(field, grid_n + 8, box_l);
  const double disagreement = std::abs(coarse.quotient() - fine.quotient());
  if (disagreement > 1e-4)
    throw VerificationError("quotient_toroidal_3d: Richardson comparison disagrees beyond 1e-4");

  QuotientReport rep;
  rep.integral_grad = coarse.grad;
  rep.integral_weighted = coarse.weighted;
  rep.integral_l2 = coarse.l2;
  rep.quotient = coarse.quotient();
  rep.richardson_disagreement = disagreement;
  rep.grid_n = grid_n;
  rep.box_l = box_l;
  return rep;
}

QuotientReport quotient_poloidal_1d(const ProblemParams& params, double lambda, double tol) {
  if (params.degree != 1)
    throw std::invalid_argument("quotient_poloidal_1d: reduction is stated for nu = 1");
  const GeneralizedParams gp = params.generalized();
  const RadialProfile g = profile_from_extremal(ExtremalProfile(gp, lambda));
  const double p0 = p_beta(g, gp, 0, tol);
  const double p1 = p_beta(g, gp, 1, tol);
  const double q = q_form(g, gp, tol);

  // For a unit axis: int |u|^2 |x|^{2 beta} = 2 alpha_1 (omega/N) P_beta and
  // int |grad u|^2 = 8 alpha_1 (omega/N) Q, omega = |S^{N-1}|.
  const int N = params.dim;
  const double omega = 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
  const double scale = 2.0 * params.alpha_nu * omega / N;

  QuotientReport rep;
  rep.integral_l2 = scale * p0;
  rep.integral_weighted = scale * p1;
  rep.integral_grad = 4.0 * scale * q;
  rep.quotient = rep.integral_grad * rep.integral_weighted / (rep.integral_l2 * rep.integral_l2);
  rep.grid_n = 0;
  rep.box_l = 0.0;
  return rep;
}

SphereReduction sphere_reduction_check(const PoloidalExtremal& field, double r, int n_theta,
                                       int n_phi, int nu) {
  if (field.dim() != 3)
    throw std::invalid_argument("sphere_reduction_check: implemented for N = 3");
  if (nu == 0)
    throw std::invalid_argument(
        "sphere_reduction_check: nu = 0 rejected, the potential must have zero spherical mean");
  if (nu != 1) throw std::invalid_argument("sphere_reduction_check: only nu = 1 is supported");
  if (!(r > 0.0)) throw std::invalid_argument("sphere_reduction_check: r must be > 0");

  const double alpha1 = field.params().alpha_nu;  // nu (nu + N - 2) = 2 at N = 3

  const QuadratureRule glu = gauss_legendre_rule(n_theta);
  const double wphi = 2.0 * M_PI / n_phi;
  double lhs = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double cu = glu.nodes[i];
    const double su = std::sqrt(std::max(0.0, 1.0 - cu * cu));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      const std::array<double, 3> x{r * su * std::cos(phi), r * su * std::sin(phi), r * cu};
      const std::vector<double> u = field(x);
      lhs += glu.weights[i] * wphi * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    }
  }
  lhs /= alpha1;

  const double r2 = r * r;
  const double h = field.profile().value(r2);
  const double rhp = 2.0 * r2 * field.profile().deriv1(r2);
  const double y2 = norm_sq(field.axis());
  const double rhs =
      (alpha1 * h * h + (rhp + 2.0 * h) * (rhp + 2.0 * h)) * (4.0 * M_PI / 3.0) * y2;
  return {lhs, rhs};
}

GaussianQuotient scalar_gaussian_quotient(int N, double b0, std::span<const double> weights) {
  if (N < 1) throw std::invalid_argument("scalar_gaussian_quotient: N must be >= 1");
  if (!(b0 > 0.0)) throw std::invalid_argument("scalar_gaussian_quotient: B must be > 0");
  if (static_cast<int>(weights.size()) != N)
    throw std::invalid_argument("scalar_gaussian_quotient: weights size must equal N");
  double s = 0.0;
  for (double w : weights) s += w * w;
  if (!(s > 0.0)) throw std::invalid_argument("scalar_gaussian_quotient: weights all zero");

  const double gauss = std::pow(M_PI / (2.0 * b0), 0.5 * N);
  GaussianQuotient out;
  out.integral_grad = 0.25 * (N + 2.0) * gauss * s;
  out.integral_weighted = (N + 2.0) / (4.0 * 4.0 * b0 * b0) * gauss * s;
  out.integral_l2 = 1.0 / (4.0 * b0) * gauss * s;
  // gauss and s cancel identically in grad * weighted / l2^2; the ratio
  // depends on the dimension alone
  out.quotient = 0.25 * (N + 2.0) * (N + 2.0);
  return out;
}

}  // namespace solhup
