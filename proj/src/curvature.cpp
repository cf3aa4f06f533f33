#include "godel/curvature.hpp"

#include <cmath>

#include "godel/metric.hpp"

namespace godel {

namespace {

// First and second x1-derivatives of the Cartesian metric.
Eigen::Matrix4d metric_dx1(double x1, double a) {
  const double e = std::exp(x1);
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  d(0, 2) = d(2, 0) = a * a * e;
  d(2, 2) = a * a * e * e;
  return d;
}

Eigen::Matrix4d metric_dx1x1(double x1, double a) {
  const double e = std::exp(x1);
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  d(0, 2) = d(2, 0) = a * a * e;
  d(2, 2) = 2.0 * a * a * e * e;
  return d;
}

// S_l(i, j) = d_i g_lj + d_j g_li - d_l g_ij with only d_1 nonzero.
std::array<Eigen::Matrix4d, 4> lowered(const Eigen::Matrix4d& d1) {
  std::array<Eigen::Matrix4d, 4> s;
  for (int l = 0; l < 4; ++l) {
    s[l].setZero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double v = 0.0;
        if (i == 1) v += d1(l, j);
        if (j == 1) v += d1(l, i);
        if (l == 1) v -= d1(i, j);
        s[l](i, j) = v;
      }
  }
  return s;
}

Christoffels raise(const Eigen::Matrix4d& ginv, const std::array<Eigen::Matrix4d, 4>& s) {
  Christoffels g;
  for (int k = 0; k < 4; ++k) {
    g[k].setZero();
    for (int l = 0; l < 4; ++l) g[k] += 0.5 * ginv(k, l) * s[l];
  }
  return g;
}

}  // namespace

Eigen::Matrix4d inverse_metric_cartesian(const Eigen::Vector4d& x, double a) {
  const double em = std::exp(-x[1]);
  const double s = 1.0 / (a * a);
  Eigen::Matrix4d gi = Eigen::Matrix4d::Zero();
  gi(0, 0) = -s;
  gi(0, 2) = gi(2, 0) = 2.0 * em * s;
  gi(2, 2) = -2.0 * em * em * s;
  gi(1, 1) = -s;
  gi(3, 3) = -s;
  return gi;
}

Christoffels christoffels(const Eigen::Vector4d& x, double a) {
  return raise(inverse_metric_cartesian(x, a), lowered(metric_dx1(x[1], a)));
}

Christoffels christoffels_dx1(const Eigen::Vector4d& x, double a) {
  const Eigen::Matrix4d gi = inverse_metric_cartesian(x, a);
  const Eigen::Matrix4d dgi = -gi * metric_dx1(x[1], a) * gi;
  const Christoffels first = raise(dgi, lowered(metric_dx1(x[1], a)));
  const Christoffels second = raise(gi, lowered(metric_dx1x1(x[1], a)));
  Christoffels out;
  for (int k = 0; k < 4; ++k) out[k] = first[k] + second[k];
  return out;
}

RicciResult ricci_and_scalar(const Eigen::Vector4d& x, double a) {
  const Christoffels G = christoffels(x, a);
  const Christoffels dG1 = christoffels_dx1(x, a);
  auto dG = [&](int c, int k, int i, int j) { return c == 1 ? dG1[k](i, j) : 0.0; };
  RicciResult r;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double s = 0.0;
      for (int q = 0; q < 4; ++q) {
        s += dG(q, q, d, b) - dG(d, q, q, b);
        for (int e = 0; e < 4; ++e) s += G[q](q, e) * G[e](d, b) - G[q](d, e) * G[e](q, b);
      }
      r.ricci(b, d) = s;
    }
  r.scalar = inverse_metric_cartesian(x, a).cwiseProduct(r.ricci).sum();
  return r;
}

MatterField matter_field(const Eigen::Vector4d& x, double a) {
  MatterField m;
  m.vector << 1.0 / a, 0.0, 0.0, 0.0;
  m.covector << a, 0.0, a * std::exp(x[1]), 0.0;
  return m;
}

double einstein_residual(const Eigen::Vector4d& x, double a, std::optional<double> lambda) {
  const RicciResult r = ricci_and_scalar(x, a);
  const Eigen::Matrix4d g = metric_cartesian<double>(x, a).g;
  const Eigen::Vector4d u = matter_field(x, a).covector;
  const double lam = lambda.value_or(cosmological_constant(a));
  const Eigen::Matrix4d res =
      r.ricci - 0.5 * r.scalar * g - matter_density_term(a) * u * u.transpose() - lam * g;
  return res.cwiseAbs().maxCoeff();
}

double perfect_fluid_residual(const Eigen::Vector4d& x, double a) {
  const Eigen::Vector4d u = matter_field(x, a).covector;
  return (ricci_and_scalar(x, a).ricci - matter_density_term(a) * u * u.transpose()).cwiseAbs().maxCoeff();
}

double vorticity_scalar(const Eigen::Matrix4d& ginv, const Eigen::Vector4d& u_vec,
                        const Eigen::Vector4d& u_cov, const Eigen::Matrix4d& u_cov_deriv) {
  // h_i^a = delta_i^a - u_i u^a
  const Eigen::Matrix4d h = Eigen::Matrix4d::Identity() - u_cov * u_vec.transpose();
  const Eigen::Matrix4d rot = 0.5 * (u_cov_deriv - u_cov_deriv.transpose());
  const Eigen::Matrix4d w = h * rot * h.transpose();
  const Eigen::Matrix4d w_up = ginv * w * ginv;
  const double s = 0.5 * w.cwiseProduct(w_up).sum();
  return std::sqrt(std::max(0.0, s));
}

Eigen::Matrix4d matter_covariant_derivative(const Eigen::Vector4d& x, double a) {
  const Christoffels G = christoffels(x, a);
  const Eigen::Vector4d u = matter_field(x, a).covector;
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  d(2, 1) = a * std::exp(x[1]);  // d_1 u_2
  for (int k = 0; k < 4; ++k) d -= u[k] * G[k];
  return d;
}

double vorticity(const Eigen::Vector4d& x, double a) {
  const MatterField m = matter_field(x, a);
  return vorticity_scalar(inverse_metric_cartesian(x, a), m.vector, m.covector,
                          matter_covariant_derivative(x, a));
}

CurvatureReport curvature_report(const Eigen::Vector4d& x, double a) {
  CurvatureReport r;
  r.point = x;
  r.a = a;
  r.gamma = christoffels(x, a);
  const RicciResult ric = ricci_and_scalar(x, a);
  r.ricci = ric.ricci;
  r.scalar = ric.scalar;
  r.einstein_residual = einstein_residual(x, a);
  r.fluid_residual = perfect_fluid_residual(x, a);
  r.lambda = cosmological_constant(a);
  r.density_term = matter_density_term(a);
  r.vorticity = vorticity(x, a);
  return r;
}

}  // namespace godel
