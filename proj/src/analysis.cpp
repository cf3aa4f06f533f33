#include "godel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace godel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol = 1e-13) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  const double t = 0.5 * (lo + hi);
  return {t, f(t)};
}

}  // namespace

double period(const GeodesicParamsd& p) {
  if (p.is_line()) throw DomainError("period: straight-line geodesics (b = 0) have no period");
  return 2.0 * kPi / p.omega();
}

double drift_per_period(const GeodesicParamsd& p) {
  if (p.is_line()) throw DomainError("drift_per_period: straight-line geodesics (b = 0) have no period");
  return 2.0 * kPi * (kSqrt2 - p.phi0() / p.omega());
}

double planar_return_distance(const GeodesicParamsd& p, double t) {
  const GroupElementd x = closed_form_position(p, t);
  return std::hypot(x.x1(), x.x2());
}

PeriodDriftReport audit_geodesic(const GeodesicParamsd& p, const AuditConfig& config) {
  PeriodDriftReport r;
  r.params = p;
  r.phi3_slope = p.phi3();
  if (p.is_line()) {
    r.line = true;
    r.reason = "line: x0 = phi0 t is strictly increasing";
    r.closed = !(p.phi0() > 0.0);
    return r;
  }

  r.period = period(p);
  r.drift = drift_per_period(p);
  r.drift_check = std::abs(closed_form_position(p, r.period).x0() - r.drift);
  for (int k = 1; k <= 3; ++k) {
    r.return_residual = std::max(r.return_residual, planar_return_distance(p, k * r.period));
  }

  const auto n = static_cast<std::size_t>(std::ceil(r.period / config.resolution));
  const double h = r.period / static_cast<double>(n);
  auto f = [&](double t) { return planar_return_distance(p, t); };
  double prev = f(0.0);
  double cur = f(h);
  r.min_interior_return = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) {
    const double next = f(h * static_cast<double>(i + 1));
    if (cur <= prev && cur <= next) {
      const double ti = h * static_cast<double>(i);
      const auto [tm, fm] = golden_min(f, ti - h, ti + h);
      r.min_interior_return = std::min(r.min_interior_return, fm);
      if (fm < config.threshold) {
        ++r.spurious_returns;
        r.spurious_times.push_back(tm);
      }
    }
    prev = cur;
    cur = next;
  }

  if (p.phi3() != 0.0) {
    r.reason = "x3 = phi3 t is strictly monotone";
    r.closed = false;
  } else {
    r.reason = "(x1, x2) returns only at multiples of the period and x0 gains a positive drift";
    r.closed = r.spurious_returns > 0 || !(r.drift > 0.0);
  }
  return r;
}

std::vector<PeriodDriftReport> no_closed_geodesic_audit(const std::vector<GeodesicParamsd>& grid,
                                                         const AuditConfig& config) {
  std::vector<PeriodDriftReport> out;
  out.reserve(grid.size());
  for (const auto& p : grid) out.push_back(audit_geodesic(p, config));
  return out;
}

QuadratureResult period_integral(double alpha, double tol) {
  const auto integrand = [alpha](double t) {
    return std::cos(t) / ((1.0 + alpha) + (1.0 - alpha) * std::cos(t));
  };
  return integrate_adaptive(integrand, 0.0, 2.0 * kPi, tol);
}

double x0_shift_check(const std::vector<double>& t_grid) {
  const auto p = GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, 0.0, 0.0);
  const double T = isotropic_drift();
  double worst = 0.0;
  for (double t : t_grid) {
    const double shift = closed_form_position(p, t + 2.0 * kPi).x0() - closed_form_position(p, t).x0();
    worst = std::max(worst, std::abs(shift - T));
  }
  return worst;
}

double alpha1(double phi0) {
  if (!(phi0 >= 1.0)) throw DomainError("alpha1: requires phi0 >= 1");
  const double b = std::sqrt((phi0 - 1.0) * (phi0 + 1.0));
  return (kSqrt2 * phi0 - b) / (kSqrt2 * phi0 + b);
}

AlphaGapReport alpha_gap_check(const std::vector<double>& phi0_grid) {
  AlphaGapReport rep;
  rep.all_hold = !phi0_grid.empty();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double phi0 : phi0_grid) {
    if (!(phi0 > 1.0)) throw DomainError("alpha_gap_check: grid points must exceed 1");
    AlphaGapRow row;
    row.phi0 = phi0;
    row.alpha1 = alpha1(phi0);
    row.alpha_gap = row.alpha1 - alpha2();
    row.frequency = std::sqrt(phi0 * phi0 + 1.0);
    row.frequency_gap = row.frequency - kSqrt2;
    row.holds = row.alpha_gap > 0.0 && row.frequency_gap > 0.0;
    rep.all_hold = rep.all_hold && row.holds;
    if (phi0 > hi) {
      hi = phi0;
      rep.largest_phi0_alpha_gap = row.alpha_gap;
    }
    if (phi0 < lo) {
      lo = phi0;
      rep.smallest_phi0_frequency_gap = row.frequency_gap;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

double x2_sup_bound(const GeodesicParamsd& p) {
  if (p.is_line()) return 0.0;
  const double phi0 = p.phi0();
  const double b = p.b();
  return 4.0 * phi0 * b / (2.0 * phi0 * phi0 - b * b);
}

BoundReport bounding_scan(const std::vector<GeodesicParamsd>& grid, const BoundConfig& config) {
  if (config.samples_per_period < 1 || !(config.periods > 0.0)) {
    throw DomainError("bounding_scan: need positive samples_per_period and periods");
  }
  BoundReport rep;
  rep.x1_box_lower = std::log(alpha2());
  rep.x1_box_upper = -std::log(alpha2());
  rep.x1_min = std::numeric_limits<double>::infinity();
  rep.x1_max = -std::numeric_limits<double>::infinity();
  bool box_ok = true;
  constexpr double kSlack = 1e-9;
  constexpr double kFSlack = 1e-12;

  for (const auto& p : grid) {
    BoundRow row;
    row.params = p;
    row.x1_bound = p.is_line() ? 0.0 : x1_sup_bound(p);
    row.x2_bound = x2_sup_bound(p);
    row.x1_min = std::numeric_limits<double>::infinity();
    row.x1_max = -std::numeric_limits<double>::infinity();
    const double span = config.periods * (p.is_line() ? 2.0 * kPi : period(p));
    const auto n = static_cast<std::size_t>(std::ceil(config.periods * config.samples_per_period));
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = i == n ? span : span * static_cast<double>(i) / static_cast<double>(n);
      const Eigen::Vector4d x = closed_form_position(p, t).coords();
      ++rep.samples;
      row.x1_min = std::min(row.x1_min, x[1]);
      row.x1_max = std::max(row.x1_max, x[1]);
      row.x2_abs_max = std::max(row.x2_abs_max, std::abs(x[2]));

      const double excess = std::max(std::abs(x[1]) - row.x1_bound, std::abs(x[2]) - row.x2_bound);
      rep.sharp_violation = std::max(rep.sharp_violation, excess);
      if (x[1] < rep.x1_box_lower - kSlack || x[1] > rep.x1_box_upper + kSlack ||
          std::abs(x[2]) > rep.x2_box + kSlack) {
        box_ok = false;
      }

      if (std::abs(x[2]) > rep.x2_sup) {
        rep.x2_sup = std::abs(x[2]);
        rep.x2_argmax = Excursion{p, t, x};
      }
      if (std::abs(x[2]) > rep.published_x2 + kSlack) {
        if (rep.x2_excursions++ == 0) rep.first_x2_excursion = Excursion{p, t, x};
      }
      if (x[1] > rep.published_x1_upper || x[1] < rep.published_x1_lower) {
        if (rep.x1_excursions++ == 0) rep.first_x1_excursion = Excursion{p, t, x};
      }
      if (t > 0.0 && (x[0] < -kFSlack || std::abs(x[3]) > x[0] + kFSlack)) {
        if (!row.f_violation) row.f_violation = Excursion{p, t, x};
        if (rep.f_violations++ == 0) rep.first_f_violation = Excursion{p, t, x};
      }
    }
    rep.x1_min = std::min(rep.x1_min, row.x1_min);
    rep.x1_max = std::max(rep.x1_max, row.x1_max);
    rep.rows.push_back(std::move(row));
  }
  rep.sharp_bounds_hold = box_ok && rep.sharp_violation <= kSlack;
  return rep;
}

std::vector<GeodesicParamsd> expand_grid(const GridSpec& spec) {
  std::vector<GeodesicParamsd> out;
  for (GeodesicKind kind : spec.kinds) {
    const std::vector<double> phi0s = kind == GeodesicKind::isotropic ? std::vector<double>{1.0} : spec.phi0;
    const double kappa = kind == GeodesicKind::timelike ? 1.0 : 0.0;
    for (double phi0 : phi0s) {
      for (double phi3 : spec.phi3) {
        const double f3 = spec.phi3_fraction ? phi3 * std::sqrt(std::max(0.0, phi0 * phi0 - kappa)) : phi3;
        const auto base = GeodesicParamsd::make(kind, phi0, f3, 0.0);
        for (double t0 : spec.t0) {
          double t = t0;
          if (spec.t0_fraction) t = base.is_line() ? 0.0 : t0 * period(base);
          out.push_back(GeodesicParamsd::make(kind, phi0, f3, t));
        }
      }
    }
  }
  return out;
}

std::vector<GeodesicParamsd> standard_grid() {
  std::vector<GeodesicParamsd> out;
  auto add = [&out](GeodesicKind kind, double phi0, double phi3) {
    const double w = GeodesicParamsd::make(kind, phi0, phi3, 0.0).omega();
    for (double t0 : {0.0, kPi / (2.0 * w), kPi / w}) out.push_back(GeodesicParamsd::make(kind, phi0, phi3, t0));
  };
  for (double phi3 : {0.0, 0.3, -0.3, 0.7, -0.7}) add(GeodesicKind::isotropic, 1.0, phi3);
  for (double phi0 : {1.2, std::sqrt(3.0), 2.5, 4.0}) {
    const double bound = std::sqrt(phi0 * phi0 - 1.0);
    for (double phi3 : {0.0, 0.3, -0.3, 0.7 * bound, -0.7 * bound}) add(GeodesicKind::timelike, phi0, phi3);
  }
  return out;
}

}  // namespace godel
