#ifndef GODEL_ANALYSIS_HPP
#define GODEL_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "godel/extremal.hpp"
#include "godel/oracle.hpp"

namespace godel {

/// alpha for the isotropic phi3 = 0 family: 3 - 2 sqrt2.
inline double alpha2() { return 3.0 - 2.0 * std::numbers::sqrt2; }

/// x0 advance over one period of the isotropic phi3 = 0 family: 2 (sqrt2 - 1) pi.
inline double isotropic_drift() { return 2.0 * (std::numbers::sqrt2 - 1.0) * std::numbers::pi; }

/// 2 pi / omega. Throws DomainError for lines.
double period(const GeodesicParamsd& p);

/// x0(t + P) - x0(t) = 2 pi (sqrt2 - phi0 / omega). Throws DomainError for lines.
double drift_per_period(const GeodesicParamsd& p);

/// |(x1(t), x2(t))|, the distance of the projected curve from its start.
double planar_return_distance(const GeodesicParamsd& p, double t);

struct PeriodDriftReport {
  GeodesicParamsd params;
  bool line = false;
  double period = 0.0;            // 0 for lines
  double drift = 0.0;             // x0 gain per period (lines: 0)
  double drift_check = 0.0;       // |x0(P) - drift|
  double phi3_slope = 0.0;
  double return_residual = 0.0;   // max_k |(x1, x2)(kP)|, k = 1..3
  double min_interior_return = 0.0;  // min of the return distance on (0, P) away from the ends
  std::size_t spurious_returns = 0;
  std::vector<double> spurious_times;
  std::string reason;             // which argument excludes closure
  bool closed = false;
  std::string verdict() const { return closed ? "closed geodesic" : "no closed geodesic"; }
};

struct AuditConfig {
  double resolution = 1e-4;
  double threshold = 1e-8;
};

PeriodDriftReport audit_geodesic(const GeodesicParamsd& p, const AuditConfig& config = {});
std::vector<PeriodDriftReport> no_closed_geodesic_audit(const std::vector<GeodesicParamsd>& grid,
                                                         const AuditConfig& config = {});

/// Adaptive quadrature of cos t / ((1 + alpha) + (1 - alpha) cos t) over [0, 2 pi].
QuadratureResult period_integral(double alpha = alpha2(), double tol = 1e-10);

/// max over the grid of |x0(t + 2 pi) - x0(t) - T| on the isotropic phi3 = 0, t0 = 0 geodesic.
double x0_shift_check(const std::vector<double>& t_grid);

struct AlphaGapRow {
  double phi0 = 0.0;
  double alpha1 = 0.0;
  double alpha_gap = 0.0;      // alpha1 - alpha2
  double frequency = 0.0;      // sqrt(phi0^2 + 1)
  double frequency_gap = 0.0;  // sqrt(phi0^2 + 1) - sqrt2
  bool holds = false;
};

struct AlphaGapReport {
  std::vector<AlphaGapRow> rows;
  bool all_hold = false;
  double largest_phi0_alpha_gap = 0.0;
  double smallest_phi0_frequency_gap = 0.0;
};

/// (sqrt2 phi0 - sqrt(phi0^2 - 1)) / (sqrt2 phi0 + sqrt(phi0^2 - 1)).
double alpha1(double phi0);

AlphaGapReport alpha_gap_check(const std::vector<double>& phi0_grid);

/// Sharp bound on |x2| over all t and all phases: 4 phi0 b / (2 phi0^2 - b^2).
double x2_sup_bound(const GeodesicParamsd& p);

/// Sharp x1 range over all t and phases: [ln alpha, -ln alpha].
inline double x1_sup_bound(const GeodesicParamsd& p) { return -std::log(p.alpha()); }

struct Excursion {
  GeodesicParamsd params;
  double t = 0.0;
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
};

struct BoundRow {
  GeodesicParamsd params;
  double x1_min = 0.0;
  double x1_max = 0.0;
  double x2_abs_max = 0.0;
  double x1_bound = 0.0;
  double x2_bound = 0.0;
  std::optional<Excursion> f_violation;
};

struct BoundConfig {
  int samples_per_period = 2000;
  double periods = 2.0;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  std::size_t samples = 0;
  double x1_min = 0.0;
  double x1_max = 0.0;
  double x2_sup = 0.0;
  std::optional<Excursion> x2_argmax;

  // Hard: every sample lies inside its own sharp bounds and inside the global box.
  double x1_box_lower = 0.0;  // ln alpha2
  double x1_box_upper = 0.0;  // -ln alpha2
  double x2_box = 4.0;
  double sharp_violation = 0.0;  // max excess over the per-params bounds
  bool sharp_bounds_hold = false;

  // Soft comparisons with the published box D and region F.
  double published_x2 = 2.0 + std::numbers::sqrt2;
  double published_x1_lower = -1.03;
  double published_x1_upper = 0.7;
  std::size_t x2_excursions = 0;
  std::optional<Excursion> first_x2_excursion;
  std::size_t x1_excursions = 0;
  std::optional<Excursion> first_x1_excursion;
  std::size_t f_violations = 0;
  std::optional<Excursion> first_f_violation;
};

BoundReport bounding_scan(const std::vector<GeodesicParamsd>& grid, const BoundConfig& config = {});

/// A rectangular parameter grid. Isotropic entries ignore phi0. With
/// phi3_fraction the phi3 values scale the bound sqrt(phi0^2 - kappa); with
/// t0_fraction the t0 values scale the period 2 pi / omega (lines get t0 = 0).
struct GridSpec {
  std::vector<GeodesicKind> kinds;
  std::vector<double> phi0;
  std::vector<double> phi3{0.0};
  bool phi3_fraction = false;
  std::vector<double> t0{0.0};
  bool t0_fraction = false;
  BoundConfig bounds;
};

/// Expands the grid in order kind, phi0, phi3, t0. Invalid points throw.
std::vector<GeodesicParamsd> expand_grid(const GridSpec& spec);

/// The grid used by the acceptance suite: both classes, phi3 in
/// {0, +-0.3, +-0.7 bound}, t0 in {0, pi/(2 omega), pi/omega}.
std::vector<GeodesicParamsd> standard_grid();

}  // namespace godel

#endif  // GODEL_ANALYSIS_HPP
