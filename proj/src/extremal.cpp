#include "godel/extremal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace godel {

std::string_view kind_name(GeodesicKind k) {
  return k == GeodesicKind::timelike ? "timelike" : "isotropic";
}

std::optional<GeodesicKind> parse_kind(std::string_view name) {
  if (name == "timelike") return GeodesicKind::timelike;
  if (name == "isotropic" || name == "null") return GeodesicKind::isotropic;
  return std::nullopt;
}

SampledCurve sample_curve(const GeodesicParamsd& p, double t_min, double t_max, int steps,
                          const GroupElementd& base) {
  if (steps < 1) throw DomainError("sample_curve: steps must be at least 1");
  if (!(t_max > t_min)) throw DomainError("sample_curve: t_max must exceed t_min");
  SampledCurve c;
  c.params = p;
  c.t.reserve(steps + 1);
  c.x.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    // Endpoints are hit exactly; interior points by affine interpolation.
    const double t = i == steps ? t_max : t_min + (t_max - t_min) * static_cast<double>(i) / steps;
    c.t.push_back(t);
    c.x.push_back(compose(base, closed_form_position(p, t)));
  }
  return c;
}

namespace {

double hyperboloid_pairing(const AdjointStated& psi, const Eigen::Vector3d& xi) {
  return psi[0] * std::sqrt(1.0 + xi.squaredNorm()) + psi[1] * xi[0] + psi[2] * xi[1] +
         psi[3] * xi[2];
}

}  // namespace

HyperboloidMin minimize_on_hyperboloid(const AdjointStated& psi) {
  const Eigen::Vector3d ps(psi[1], psi[2], psi[3]);
  const double half_width = 2.0 * ps.norm() + 1.0;
  constexpr int kGrid = 17;
  const double h = 2.0 * half_width / (kGrid - 1);

  HyperboloidMin best;
  best.value = hyperboloid_pairing(psi, best.xi);
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      for (int k = 0; k < kGrid; ++k) {
        const Eigen::Vector3d xi(-half_width + i * h, -half_width + j * h, -half_width + k * h);
        const double v = hyperboloid_pairing(psi, xi);
        if (v < best.value) {
          best.value = v;
          best.xi = xi;
        }
      }
    }
  }

  double step = h;
  while (step > 1e-11) {
    bool moved = false;
    for (int axis = 0; axis < 3; ++axis) {
      for (double sign : {1.0, -1.0}) {
        Eigen::Vector3d trial = best.xi;
        trial[axis] += sign * step;
        const double v = hyperboloid_pairing(psi, trial);
        if (v < best.value) {
          best.value = v;
          best.xi = trial;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

PmpReport pmp_check(const GeodesicParamsd& p, double t) {
  PmpReport r;
  r.t = t;
  const AdjointStated psi = adjoint_at(p, t);
  const AlgebraVectord u = control(psi);
  r.pairing = psi.pair(u);
  r.norm = inner_at_identity(u, u);
  r.pairing_residual = std::abs(r.pairing - r.norm);

  if (p.kind() == GeodesicKind::timelike) {
    const HyperboloidMin m = minimize_on_hyperboloid(psi);
    r.minimized = true;
    r.min_value = m.value;
    r.argmin = m.xi;
    r.control_xi = to_orthonormal(u).c.tail<3>();
    r.argmin_distance = (r.argmin - r.control_xi).norm();
  }

  constexpr double h = 1e-6;
  const Eigen::Vector4d dpsi = (adjoint_at(p, t + h).psi - adjoint_at(p, t - h).psi) / (2.0 * h);
  for (int j = 0; j < 4; ++j) {
    const auto ej = AlgebraVectord::basis(Frame::orthonormal, j);
    const double rhs = psi.pair(bracket(u, ej));
    r.adjoint_residual = std::max(r.adjoint_residual, std::abs(dpsi[j] - rhs));
  }
  return r;
}

}  // namespace godel
