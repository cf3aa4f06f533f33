#ifndef GODEL_EXTREMAL_HPP
#define GODEL_EXTREMAL_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "godel/branch.hpp"
#include "godel/errors.hpp"
#include "godel/group.hpp"
#include "godel/metric.hpp"

// Causal geodesics of the Goedel group through the unit, obtained as
// extremals of the left-invariant minimum principle. The adjoint covector
// psi = (psi0, psi1, psi2, psi3) is taken relative to the orthonormal frame
// (e0, e1, e2', e3) and the control is u = psi0 e0 - psi1 e1 - psi2 e2' - psi3 e3.

namespace godel {

enum class GeodesicKind { timelike, isotropic };

std::string_view kind_name(GeodesicKind k);
std::optional<GeodesicKind> parse_kind(std::string_view name);

template <typename Scalar>
struct AdjointState {
  Vector4<Scalar> psi = Vector4<Scalar>::Zero();

  AdjointState() = default;
  explicit AdjointState(const Vector4<Scalar>& p) : psi(p) {}
  AdjointState(Scalar p0, Scalar p1, Scalar p2, Scalar p3) : psi(p0, p1, p2, p3) {}

  Scalar operator[](int i) const { return psi[i]; }
  Scalar& operator[](int i) { return psi[i]; }

  /// psi(v) = sum_j psi_j v_j for v in the orthonormal frame.
  Scalar pair(const AlgebraVector<Scalar>& v) const { return psi.dot(to_orthonormal(v).c); }
};

using AdjointStated = AdjointState<double>;

/// Below this |(psi1, psi2)| the geodesic is one of the straight lines.
inline constexpr double kLineThreshold = 1e-12;

template <typename Scalar>
class GeodesicParams {
 public:
  GeodesicParams() = default;

  /// Parameters of the geodesic with x0-rate phi0 at the unit's adjoint
  /// level, x3 velocity phi3 and phase t0. Validates the normalization:
  /// isotropic needs phi0 = 1 and |phi3| <= 1; timelike needs phi0 >= 1 and
  /// |phi3| <= sqrt(phi0^2 - 1). Equality gives the straight lines.
  static GeodesicParams make(GeodesicKind kind, Scalar phi0, Scalar phi3, Scalar t0) {
    using std::abs;
    using std::sqrt;
    std::ostringstream msg;
    msg.precision(17);
    if (!std::isfinite(static_cast<double>(phi0)) || !std::isfinite(static_cast<double>(phi3)) ||
        !std::isfinite(static_cast<double>(t0))) {
      throw DomainError("geodesic parameters must be finite");
    }
    const Scalar kappa = kind == GeodesicKind::timelike ? Scalar(1) : Scalar(0);
    if (kind == GeodesicKind::isotropic) {
      if (abs(phi0 - Scalar(1)) > Scalar(1e-12)) {
        msg << "isotropic geodesics are normalized to phi0 = 1; got phi0 = " << phi0;
        throw DomainError(msg.str());
      }
      phi0 = Scalar(1);
      if (abs(phi3) > Scalar(1)) {
        msg << "isotropic geodesics require |phi3| <= 1 (0 < |phi3| < 1 off the subgroup G0); got phi3 = "
            << phi3;
        throw DomainError(msg.str());
      }
    } else {
      if (!(phi0 >= Scalar(1))) {
        msg << "timelike geodesics require phi0 >= 1; got phi0 = " << phi0;
        throw DomainError(msg.str());
      }
      if (phi3 * phi3 > phi0 * phi0 - Scalar(1) + Scalar(1e-12)) {
        msg << "timelike geodesics require |phi3| <= sqrt(phi0^2 - 1) = " << sqrt(phi0 * phi0 - Scalar(1))
            << "; got phi3 = " << phi3;
        throw DomainError(msg.str());
      }
    }
    Scalar b2 = phi0 * phi0 - kappa - phi3 * phi3;
    if (b2 < Scalar(0)) b2 = Scalar(0);
    return GeodesicParams(kind, phi0, phi3, sqrt(b2), t0);
  }

  /// Parameters from an initial covector psi(0). phi3 = -psi3 because
  /// x3' = u3 = -psi3.
  static GeodesicParams from_initial(GeodesicKind kind, const AdjointState<Scalar>& psi,
                                     Scalar tol = Scalar(1e-9)) {
    using std::abs;
    using std::atan2;
    using std::hypot;
    std::ostringstream msg;
    msg.precision(17);
    if (!psi.psi.allFinite()) throw DomainError("initial covector must be finite");
    if (!(psi[0] > Scalar(0))) {
      msg << "initial covector must be future directed (psi0 > 0); got psi0 = " << psi[0];
      throw DomainError(msg.str());
    }
    const Scalar spatial = psi[1] * psi[1] + psi[2] * psi[2] + psi[3] * psi[3];
    if (kind == GeodesicKind::isotropic) {
      const Scalar r0 = psi[0] - Scalar(1);
      const Scalar r1 = spatial - Scalar(1);
      if (abs(r0) > tol || abs(r1) > tol) {
        msg << "isotropic normalization psi0 = 1, psi1^2 + psi2^2 + psi3^2 = 1 violated; residuals "
            << r0 << ", " << r1;
        throw DomainError(msg.str());
      }
    } else {
      const Scalar r = psi[0] * psi[0] - spatial - Scalar(1);
      if (abs(r) > tol) {
        msg << "timelike normalization psi0^2 - psi1^2 - psi2^2 - psi3^2 = 1 violated; residual " << r;
        throw DomainError(msg.str());
      }
      if (psi[0] < Scalar(1) - tol) {
        msg << "timelike geodesics require psi0 >= 1; got " << psi[0];
        throw DomainError(msg.str());
      }
    }
    const Scalar phi0 = kind == GeodesicKind::isotropic ? Scalar(1) : psi[0];
    const Scalar b = hypot(psi[1], psi[2]);
    if (b < Scalar(kLineThreshold)) return GeodesicParams(kind, phi0, Scalar(0) - psi[3], Scalar(0), Scalar(0));
    GeodesicParams p(kind, phi0, Scalar(0) - psi[3], b, Scalar(0));
    const Scalar theta0 = atan2(-psi[1], psi[2]);
    p.t0_ = Scalar(2) / p.omega_ * unwrapped_atan_tan(Scalar(1) / p.sqrt_alpha_, theta0 / Scalar(2));
    return p;
  }

  GeodesicKind kind() const { return kind_; }
  Scalar phi0() const { return phi0_; }
  Scalar phi3() const { return phi3_; }
  Scalar b() const { return b_; }
  Scalar t0() const { return t0_; }

  /// (u, u): 1 timelike, 0 isotropic.
  Scalar norm() const { return kind_ == GeodesicKind::timelike ? Scalar(1) : Scalar(0); }
  Scalar a_coef() const { return std::numbers::sqrt2_v<Scalar> * phi0_; }
  Scalar alpha() const { return sqrt_alpha_ * sqrt_alpha_; }
  Scalar sqrt_alpha() const { return sqrt_alpha_; }
  Scalar one_minus_alpha() const { return one_minus_alpha_; }
  Scalar omega() const { return omega_; }
  /// Amplitude of x2: (sqrt2 b / omega) N(omega t0).
  Scalar beta() const { return std::numbers::sqrt2_v<Scalar> * b_ / omega_ * profile(-omega_ * t0_); }
  bool is_line() const { return b_ < Scalar(kLineThreshold); }

  /// N(tau) = (1 + alpha) + (1 - alpha) cos tau, written to stay accurate as alpha -> 1.
  Scalar profile(Scalar tau) const {
    using std::sin;
    const Scalar s = sin(tau / Scalar(2));
    return Scalar(2) - Scalar(2) * one_minus_alpha_ * s * s;
  }

  template <typename Other>
  GeodesicParams<Other> cast() const {
    auto p = GeodesicParams<Other>::make(kind_, Other(phi0_), Other(phi3_), Other(t0_));
    return p;
  }

 private:
  GeodesicParams(GeodesicKind kind, Scalar phi0, Scalar phi3, Scalar b, Scalar t0)
      : kind_(kind), phi0_(phi0), phi3_(phi3), b_(b), t0_(t0) {
    using std::sqrt;
    const Scalar a = a_coef();
    omega_ = sqrt((a - b_) * (a + b_));
    sqrt_alpha_ = omega_ / (a + b_);
    one_minus_alpha_ = Scalar(2) * b_ / (a + b_);
  }

  GeodesicKind kind_ = GeodesicKind::timelike;
  Scalar phi0_ = Scalar(1);
  Scalar phi3_ = Scalar(0);
  Scalar b_ = Scalar(0);
  Scalar t0_ = Scalar(0);
  Scalar omega_ = Scalar(1);
  Scalar sqrt_alpha_ = Scalar(1);
  Scalar one_minus_alpha_ = Scalar(0);
};

using GeodesicParamsd = GeodesicParams<double>;

/// d psi / dt for the Goedel algebra.
template <typename Scalar>
AdjointState<Scalar> adjoint_rhs(const AdjointState<Scalar>& psi, Scalar phi0) {
  const Scalar k = std::numbers::sqrt2_v<Scalar> * phi0 - psi[2];
  return {Scalar(0), psi[2] * k, -psi[1] * k, Scalar(0)};
}

/// u = psi0 e0 - psi1 e1 - psi2 e2' - psi3 e3 (orthonormal frame).
template <typename Scalar>
AlgebraVector<Scalar> control(const AdjointState<Scalar>& psi) {
  if (!(psi[0] > Scalar(0))) throw DomainError("control: psi0 must be positive");
  return {Frame::orthonormal, psi[0], -psi[1], -psi[2], -psi[3]};
}

/// The angle of (psi1, psi2) = b(-sin theta, cos theta): continuous, strictly
/// decreasing, theta(t0) = 0 and d theta/dt = b cos theta - sqrt2 phi0.
template <typename Scalar>
Scalar theta(const GeodesicParams<Scalar>& p, Scalar t) {
  if (p.is_line()) throw DomainError("theta: undefined for straight-line geodesics (b = 0)");
  return Scalar(-2) * unwrapped_atan_tan(p.sqrt_alpha(), p.omega() * (t - p.t0()) / Scalar(2));
}

template <typename Scalar>
AdjointState<Scalar> adjoint_at(const GeodesicParams<Scalar>& p, Scalar t) {
  using std::cos;
  using std::sin;
  if (p.is_line()) return {p.phi0(), Scalar(0), Scalar(0), -p.phi3()};
  const Scalar th = theta(p, t);
  return {p.phi0(), -p.b() * sin(th), p.b() * cos(th), -p.phi3()};
}

template <typename Scalar>
AlgebraVector<Scalar> control_at(const GeodesicParams<Scalar>& p, Scalar t) {
  return control(adjoint_at(p, t));
}

/// Position at time t of the geodesic through the unit (position at t = 0 is
/// the unit). Each of x0, x1, x2 is the difference of an antiderivative
/// evaluated at tau = omega (t - t0) and at tau0 = -omega t0.
template <typename Scalar>
GroupElement<Scalar> closed_form_position(const GeodesicParams<Scalar>& p, Scalar t) {
  using std::log1p;
  using std::sin;
  if (p.is_line()) return {p.phi0() * t, Scalar(0), Scalar(0), p.phi3() * t};
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  const Scalar w = p.omega();
  const Scalar tau = w * (t - p.t0());
  const Scalar tau0 = -w * p.t0();
  const Scalar half = tau / Scalar(2);
  const Scalar half0 = tau0 / Scalar(2);

  const Scalar sh = sin(half);
  const Scalar sh0 = sin(half0);
  const Scalar x1 = log1p(-p.one_minus_alpha() * sh * sh) - log1p(-p.one_minus_alpha() * sh0 * sh0);

  const Scalar n = p.profile(tau);
  const Scalar n0 = p.profile(tau0);
  const Scalar x2 = s2 * p.b() / w * (n0 * sin(tau) / n - sin(tau0));

  const Scalar x0 = (s2 * w - p.phi0()) * t +
                    Scalar(2) * s2 * (atan_tan_offset(p.sqrt_alpha(), half) -
                                      atan_tan_offset(p.sqrt_alpha(), half0));
  return {x0, x1, x2, p.phi3() * t};
}

/// Time derivative of the closed form, from the control: the coordinate rates
/// of dl_{gamma(t)} u(t).
template <typename Scalar>
Vector4<Scalar> closed_form_velocity(const GeodesicParams<Scalar>& p, Scalar t) {
  return left_translate_tangent(closed_form_position(p, t), control_at(p, t));
}

struct SampledCurve {
  std::vector<double> t;
  std::vector<GroupElementd> x;  // Cartesian coordinates
  GeodesicParamsd params;
};

/// steps + 1 samples on [t_min, t_max] of base * gamma(t).
SampledCurve sample_curve(const GeodesicParamsd& p, double t_min, double t_max, int steps,
                          const GroupElementd& base = GroupElementd::Identity());

struct PmpReport {
  double t = 0.0;
  double pairing = 0.0;          // psi(t)(u(t))
  double norm = 0.0;             // (u(t), u(t))
  double pairing_residual = 0.0; // |pairing - norm|
  bool minimized = false;        // timelike only
  double min_value = 0.0;        // numerical min of psi(t)(u) over U
  Eigen::Vector3d argmin = Eigen::Vector3d::Zero();   // hyperboloid chart xi = spatial part
  Eigen::Vector3d control_xi = Eigen::Vector3d::Zero();
  double argmin_distance = 0.0;  // |argmin - control_xi|
  double adjoint_residual = 0.0; // max_j |psi'(t)(e_j) - psi(t)([u(t), e_j])|
};

/// Checks the minimum principle along the geodesic at time t: the pairing
/// identity, the minimization over U = {u0 > 0, (u, u) >= 1} (timelike), and
/// the adjoint equation against finite differences of the closed form.
PmpReport pmp_check(const GeodesicParamsd& p, double t);

/// Numerical minimum of psi(u) over the upper unit hyperboloid, parameterized
/// by its spatial part xi: u = (sqrt(1 + |xi|^2), xi). Coarse grid followed by
/// a shrinking compass search.
struct HyperboloidMin {
  double value = 0.0;
  Eigen::Vector3d xi = Eigen::Vector3d::Zero();
};
HyperboloidMin minimize_on_hyperboloid(const AdjointStated& psi);

}  // namespace godel

#endif  // GODEL_EXTREMAL_HPP
