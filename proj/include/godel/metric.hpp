#ifndef GODEL_METRIC_HPP
#define GODEL_METRIC_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "godel/branch.hpp"
#include "godel/errors.hpp"
#include "godel/group.hpp"

namespace godel {

/// Coordinate charts. Coordinate order inside a chart point:
///   cartesian   (x0, x1, x2, x3)
///   cylindrical (t, r, phi, x3)
///   kundt       (t, x, y, z)
enum class Chart { cartesian, cylindrical, kundt };

std::string_view chart_name(Chart c);
std::optional<Chart> parse_chart(std::string_view name);

template <typename Scalar>
using MetricMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

template <typename Scalar>
struct ChartPoint {
  Chart chart = Chart::cartesian;
  Vector4<Scalar> q = Vector4<Scalar>::Zero();
};

template <typename Scalar>
struct MetricTensor {
  Chart chart = Chart::cartesian;
  int dim = 4;
  MetricMatrix<Scalar> g;
  Vector4<Scalar> point = Vector4<Scalar>::Zero();
  Scalar a = Scalar(1);

  Scalar operator()(int i, int j) const { return g(i, j); }
};

enum class CausalTag { timelike, null, spacelike };

std::string_view causal_name(CausalTag c);

template <typename Scalar>
struct CausalClass {
  CausalTag tag = CausalTag::null;
  Scalar norm2 = Scalar(0);
  Scalar tolerance = Scalar(0);
};

/// Classification tolerance on squared norms.
inline constexpr double kCausalTolerance = 1e-9;

template <typename Scalar>
MetricTensor<Scalar> metric_cartesian(const Vector4<Scalar>& x, Scalar a = Scalar(1),
                                      int dim = 4) {
  using std::exp;
  if (!(a > Scalar(0))) throw DomainError("metric_cartesian: scale a must be positive");
  if (dim != 3 && dim != 4) throw DomainError("metric_cartesian: dim must be 3 or 4");
  const Scalar a2 = a * a;
  const Scalar e = exp(x[1]);
  MetricTensor<Scalar> m;
  m.chart = Chart::cartesian;
  m.dim = dim;
  m.point = x;
  m.a = a;
  m.g = MetricMatrix<Scalar>::Zero(dim, dim);
  m.g(0, 0) = a2;
  m.g(0, 2) = m.g(2, 0) = a2 * e;
  m.g(2, 2) = a2 * e * e / Scalar(2);
  m.g(1, 1) = -a2;
  if (dim == 4) m.g(3, 3) = -a2;
  return m;
}

/// Metric in (t, r, phi[, x3]); 3x3 unless dim = 4.
template <typename Scalar>
MetricTensor<Scalar> metric_cylindrical(Scalar r, int dim = 3) {
  using std::sinh;
  if (!(r >= Scalar(0))) throw DomainError("metric_cylindrical: r must be non-negative");
  if (dim != 3 && dim != 4) throw DomainError("metric_cylindrical: dim must be 3 or 4");
  const Scalar sh2 = sinh(r) * sinh(r);
  MetricTensor<Scalar> m;
  m.chart = Chart::cylindrical;
  m.dim = dim;
  m.point = Vector4<Scalar>(Scalar(0), r, Scalar(0), Scalar(0));
  m.g = MetricMatrix<Scalar>::Zero(dim, dim);
  m.g(0, 0) = Scalar(4);
  m.g(1, 1) = Scalar(-4);
  m.g(2, 2) = Scalar(4) * sh2 * (sh2 - Scalar(1));
  m.g(0, 2) = m.g(2, 0) = Scalar(4) * std::numbers::sqrt2_v<Scalar> * sh2;
  if (dim == 4) m.g(3, 3) = Scalar(-1);
  return m;
}

/// Metric in (t, x, y[, z]), y > 0.
template <typename Scalar>
MetricTensor<Scalar> metric_kundt(const Vector4<Scalar>& q, int dim = 3) {
  const Scalar y = q[2];
  if (!(y > Scalar(0))) throw DomainError("metric_kundt: y must be positive");
  if (dim != 3 && dim != 4) throw DomainError("metric_kundt: dim must be 3 or 4");
  MetricTensor<Scalar> m;
  m.chart = Chart::kundt;
  m.dim = dim;
  m.point = q;
  m.g = MetricMatrix<Scalar>::Zero(dim, dim);
  m.g(0, 0) = Scalar(1);
  m.g(0, 1) = m.g(1, 0) = std::numbers::sqrt2_v<Scalar> / y;
  m.g(1, 1) = Scalar(1) / (y * y);
  m.g(2, 2) = Scalar(-1) / (y * y);
  if (dim == 4) m.g(3, 3) = Scalar(-1);
  return m;
}

template <typename Scalar>
MetricTensor<Scalar> metric_at(const ChartPoint<Scalar>& p, int dim = 4) {
  switch (p.chart) {
    case Chart::cartesian:
      return metric_cartesian<Scalar>(p.q, Scalar(1), dim);
    case Chart::cylindrical: {
      auto m = metric_cylindrical<Scalar>(p.q[1], dim);
      m.point = p.q;
      return m;
    }
    case Chart::kundt:
      return metric_kundt<Scalar>(p.q, dim);
  }
  throw DomainError("metric_at: unknown chart");
}

template <typename Scalar>
CausalClass<Scalar> classify(Scalar norm2, Scalar tol = Scalar(kCausalTolerance)) {
  CausalClass<Scalar> c;
  c.norm2 = norm2;
  c.tolerance = tol;
  if (norm2 > tol) {
    c.tag = CausalTag::timelike;
  } else if (norm2 < -tol) {
    c.tag = CausalTag::spacelike;
  } else {
    c.tag = CausalTag::null;
  }
  return c;
}

/// (v, w) at the unit for algebra vectors (a = 1).
template <typename Scalar>
Scalar inner_at_identity(const AlgebraVector<Scalar>& v, const AlgebraVector<Scalar>& w) {
  const auto g = metric_cartesian<Scalar>(Vector4<Scalar>::Zero()).g;
  const Vector4<Scalar> a = to_natural(v).c;
  const Vector4<Scalar> b = to_natural(w).c;
  return a.dot(g * b);
}

template <typename Scalar>
CausalClass<Scalar> causal_class(const AlgebraVector<Scalar>& v,
                                 Scalar tol = Scalar(kCausalTolerance)) {
  return classify(inner_at_identity(v, v), tol);
}

/// Classification of a coordinate tangent vector at a chart point.
template <typename Scalar>
CausalClass<Scalar> causal_class(const Vector4<Scalar>& tangent, const ChartPoint<Scalar>& p,
                                 Scalar tol = Scalar(kCausalTolerance)) {
  const auto g = metric_at(p, 4).g;
  return classify(Scalar(tangent.dot(g * tangent)), tol);
}

// Chart transforms --------------------------------------------------------

/// (r, phi, t) -> (x0, x1, x2). phi may be any real; the x0 branch is the
/// continuous one through the strip |(x0 - 2t) / (2 sqrt2)| < pi/2.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> cyl_to_cartesian(Scalar r, Scalar phi, Scalar t) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::cosh;
  if (!(r >= Scalar(0))) throw DomainError("cyl_to_cartesian: r must be non-negative");
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  const Scalar ex1 = cosh(Scalar(2) * r) + cos(phi) * sinh(Scalar(2) * r);
  const Scalar x1 = log(ex1);
  const Scalar x2 = s2 * sin(phi) * sinh(Scalar(2) * r) / ex1;
  const Scalar x0 = Scalar(2) * t + Scalar(2) * s2 * atan_tan_offset(exp(Scalar(-2) * r), phi / Scalar(2));
  return {x0, x1, x2};
}

/// (x0, x1, x2) -> (t, r, phi) with phi in (-pi, pi]. On the axis (r = 0)
/// phi is undefined and reported as 0.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> cartesian_to_cyl(Scalar x0, Scalar x1, Scalar x2) {
  using std::abs;
  using std::asinh;
  using std::atan2;
  using std::exp;
  using std::expm1;
  using std::sqrt;
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  const Scalar X = exp(x1);
  const Scalar Xm1 = expm1(x1);
  const Scalar Y = x2 * X / s2;
  // 2 sinh^2 r = cosh 2r - 1 = ((X - 1)^2 + Y^2) / (2X)
  const Scalar sh = sqrt((Xm1 * Xm1 + Y * Y) / (Scalar(4) * X));
  const Scalar r = asinh(sh);
  Scalar phi = Scalar(0);
  if (sh > Scalar(0)) phi = atan2(Scalar(2) * X * Y, Xm1 * (X + Scalar(1)) - Y * Y);
  const Scalar offset = atan_tan_offset(exp(Scalar(-2) * r), phi / Scalar(2));
  const Scalar t = (x0 - Scalar(2) * s2 * offset) / Scalar(2);
  if (!(r == r) || !(t == t)) throw DomainError("cartesian_to_cyl: non-finite input");
  if (!(abs((x0 - Scalar(2) * t) / (Scalar(2) * s2)) < std::numbers::pi_v<Scalar> / Scalar(2))) {
    throw DomainError("cartesian_to_cyl: point outside the branch strip");
  }
  return {t, r, phi};
}

template <typename Scalar>
Vector4<Scalar> cartesian_to_kundt(const Vector4<Scalar>& x) {
  using std::exp;
  return {x[0], x[2] / std::numbers::sqrt2_v<Scalar>, exp(-x[1]), x[3]};
}

template <typename Scalar>
Vector4<Scalar> kundt_to_cartesian(const Vector4<Scalar>& q) {
  using std::log;
  if (!(q[2] > Scalar(0))) throw DomainError("kundt_to_cartesian: y must be positive");
  return {q[0], -log(q[2]), std::numbers::sqrt2_v<Scalar> * q[1], q[3]};
}

/// Cartesian coordinates of a chart point (x3 passes through unchanged).
template <typename Scalar>
Vector4<Scalar> to_cartesian(const ChartPoint<Scalar>& p) {
  switch (p.chart) {
    case Chart::cartesian:
      return p.q;
    case Chart::cylindrical: {
      const auto x = cyl_to_cartesian(p.q[1], p.q[2], p.q[0]);
      return {x[0], x[1], x[2], p.q[3]};
    }
    case Chart::kundt:
      return kundt_to_cartesian(p.q);
  }
  throw DomainError("to_cartesian: unknown chart");
}

template <typename Scalar>
ChartPoint<Scalar> from_cartesian(const Vector4<Scalar>& x, Chart target) {
  switch (target) {
    case Chart::cartesian:
      return {target, x};
    case Chart::cylindrical: {
      const auto c = cartesian_to_cyl(x[0], x[1], x[2]);
      return {target, Vector4<Scalar>(c[0], c[1], c[2], x[3])};
    }
    case Chart::kundt:
      return {target, cartesian_to_kundt(x)};
  }
  throw DomainError("from_cartesian: unknown chart");
}

// Horizon and closed timelike circles ------------------------------------

/// Radius at which the rotation circles t = const become null: ln(1 + sqrt2).
template <typename Scalar = double>
Scalar horizon_radius() {
  using std::asinh;
  return asinh(Scalar(1));
}

struct PullbackReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
  std::vector<Eigen::Vector4d> singular_points;  // |det J| below threshold, excluded
};

/// max ||J^T g_cart J - g_chart||_inf over the given chart points (3D part,
/// J by fourth-order central differences with the given step). For
/// Chart::cartesian the transform is the identity and J = I. Cylindrical
/// points closer to the axis than two steps are reported as singular.
PullbackReport pullback_residual(Chart chart, const std::vector<Eigen::Vector4d>& points,
                                 double step = 1e-4);

struct CtcWitness {
  double r = 0.0;
  std::vector<Eigen::Vector3d> cylindrical;  // (t, r, phi)
  std::vector<GroupElementd> cartesian;
  std::vector<double> norm2;                 // g_phiphi at each sample
  CausalTag circle = CausalTag::timelike;
};

/// Closed circle t = 0 at radius r sampled n times over phi in [0, 2pi]
/// (first sample repeated as the last). Throws DomainError naming the
/// circle's class when r <= horizon_radius().
CtcWitness ctc_witness(double r, std::size_t n);

/// Causal class of the rotation circle at radius r.
CausalClass<double> circle_class(double r, double tol = kCausalTolerance);

}  // namespace godel

#endif  // GODEL_METRIC_HPP
