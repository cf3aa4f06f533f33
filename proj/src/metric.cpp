#include "godel/metric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace godel {

std::string_view chart_name(Chart c) {
  switch (c) {
    case Chart::cartesian:
      return "cartesian";
    case Chart::cylindrical:
      return "cylindrical";
    case Chart::kundt:
      return "kundt";
  }
  return "unknown";
}

std::optional<Chart> parse_chart(std::string_view name) {
  if (name == "cartesian") return Chart::cartesian;
  if (name == "cylindrical") return Chart::cylindrical;
  if (name == "kundt") return Chart::kundt;
  return std::nullopt;
}

std::string_view causal_name(CausalTag c) {
  switch (c) {
    case CausalTag::timelike:
      return "timelike";
    case CausalTag::null:
      return "null";
    case CausalTag::spacelike:
      return "spacelike";
  }
  return "unknown";
}

namespace {

Eigen::Vector3d chart_to_cartesian3(Chart chart, const Eigen::Vector3d& q) {
  switch (chart) {
    case Chart::cartesian:
      return q;
    case Chart::cylindrical:
      return cyl_to_cartesian(q[1], q[2], q[0]);
    case Chart::kundt: {
      const Eigen::Vector4d x = kundt_to_cartesian(Eigen::Vector4d(q[0], q[1], q[2], 0.0));
      return x.head<3>();
    }
  }
  return q;
}

}  // namespace

PullbackReport pullback_residual(Chart chart, const std::vector<Eigen::Vector4d>& points,
                                 double step) {
  PullbackReport report;
  for (const auto& p : points) {
    const Eigen::Vector3d q = p.head<3>();
    Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
    // The cylindrical chart degenerates on the axis.
    if (chart == Chart::cylindrical && q[1] < 2.0 * step) {
      report.singular_points.push_back(p);
      continue;
    }
    if (chart != Chart::cartesian) {
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d dq = Eigen::Vector3d::Zero();
        dq[k] = step;
        jac.col(k) = (8.0 * (chart_to_cartesian3(chart, q + dq) - chart_to_cartesian3(chart, q - dq)) -
                      (chart_to_cartesian3(chart, q + 2.0 * dq) - chart_to_cartesian3(chart, q - 2.0 * dq))) /
                     (12.0 * step);
      }
    }
    if (std::abs(jac.determinant()) < 1e-10) {
      report.singular_points.push_back(p);
      continue;
    }
    const Eigen::Vector3d x = chart_to_cartesian3(chart, q);
    const Eigen::Matrix3d g_cart =
        metric_cartesian<double>(Eigen::Vector4d(x[0], x[1], x[2], 0.0), 1.0, 3).g;
    const Eigen::Matrix3d g_src = metric_at(ChartPoint<double>{chart, p}, 3).g;
    const double res = (jac.transpose() * g_cart * jac - g_src).cwiseAbs().maxCoeff();
    report.max_residual = std::max(report.max_residual, res);
    ++report.samples;
  }
  return report;
}

CausalClass<double> circle_class(double r, double tol) {
  const auto g = metric_cylindrical<double>(r);
  return classify(g(2, 2), tol);
}

CtcWitness ctc_witness(double r, std::size_t n) {
  if (n < 2) throw DomainError("ctc_witness: need at least two samples");
  const auto cls = circle_class(r);
  if (!(r > horizon_radius<double>()) || cls.tag != CausalTag::timelike) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ctc_witness: circle at r = " << r << " is " << causal_name(cls.tag)
        << " (g_phiphi = " << cls.norm2 << "), not timelike";
    throw DomainError(msg.str());
  }
  CtcWitness w;
  w.r = r;
  w.circle = cls.tag;
  const double g_pp = metric_cylindrical<double>(r)(2, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1);
    w.cylindrical.emplace_back(0.0, r, phi);
    if (k + 1 == n) {
      w.cartesian.push_back(w.cartesian.front());  // phi = 2pi closes onto phi = 0
    } else {
      const Eigen::Vector3d x = cyl_to_cartesian(r, phi, 0.0);
      w.cartesian.emplace_back(x[0], x[1], x[2], 0.0);
    }
    w.norm2.push_back(g_pp);
  }
  return w;
}

}  // namespace godel
