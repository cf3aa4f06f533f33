#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "godel/analysis.hpp"

using namespace godel;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

GeodesicParamsd iso(double phi3 = 0.0, double t0 = 0.0) {
  return GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, phi3, t0);
}
GeodesicParamsd tl(double phi0, double phi3 = 0.0, double t0 = 0.0) {
  return GeodesicParamsd::make(GeodesicKind::timelike, phi0, phi3, t0);
}

}  // namespace

TEST(Period, Values) {
  EXPECT_NEAR(period(iso()), 2 * kPi, 1e-15);
  EXPECT_NEAR(period(tl(std::sqrt(3.0))), kPi, 1e-15);
  for (double phi0 : {1.1, 2.0, 7.0}) EXPECT_NEAR(period(tl(phi0)), 2 * kPi / std::sqrt(phi0 * phi0 + 1), 1e-14);
  EXPECT_THROW(period(iso(1.0)), DomainError);
}

TEST(Drift, Values) {
  EXPECT_NEAR(drift_per_period(iso()), 2 * kPi * (kSqrt2 - 1), 1e-14);
  EXPECT_NEAR(drift_per_period(iso()), 2.6025806, 1e-7);
  EXPECT_NEAR(drift_per_period(tl(std::sqrt(3.0))), 2 * kPi * (kSqrt2 - std::sqrt(3.0) / 2), 1e-14);
  EXPECT_NEAR(drift_per_period(tl(std::sqrt(3.0))), 3.4443678, 1e-7);
  EXPECT_THROW(drift_per_period(tl(1.25, 0.75)), DomainError);
}

TEST(Drift, EqualsPositionAfterOnePeriod) {
  for (const auto& p : standard_grid()) {
    if (p.is_line()) continue;
    EXPECT_NEAR(closed_form_position(p, period(p)).x0(), drift_per_period(p), 1e-10);
    EXPECT_GT(drift_per_period(p), 0.0);
  }
}

TEST(Audit, StandardGridHasNoClosure) {
  const auto grid = standard_grid();
  EXPECT_EQ(grid.size(), 75u);
  const auto reports = no_closed_geodesic_audit(grid);
  for (const auto& r : reports) {
    EXPECT_FALSE(r.closed);
    EXPECT_EQ(r.spurious_returns, 0u);
    EXPECT_EQ(r.verdict(), "no closed geodesic");
    EXPECT_LT(r.return_residual, 1e-8);
    EXPECT_GT(r.min_interior_return, 1e-8);
  }
}

TEST(Audit, ReasonsFollowTheCase) {
  EXPECT_NE(audit_geodesic(tl(2.0, 0.5)).reason.find("x3"), std::string::npos);
  const auto line = audit_geodesic(iso(1.0));
  EXPECT_TRUE(line.line);
  EXPECT_FALSE(line.closed);
  const auto r = audit_geodesic(iso());
  EXPECT_NEAR(r.drift, 2 * kPi * (kSqrt2 - 1), 1e-14);
  EXPECT_NEAR(r.period, 2 * kPi, 1e-15);
}

TEST(Audit, DetectsArtificialReturns) {
  // With a coarse threshold the near approaches count as returns.
  AuditConfig loose;
  loose.threshold = 10.0;
  EXPECT_GT(audit_geodesic(iso(), loose).spurious_returns, 0u);
}

TEST(PeriodIntegral, Integral) {
  const auto q = period_integral();
  EXPECT_NEAR(q.value, -kPi, 1e-9);
  EXPECT_NEAR(-2 * std::sqrt(alpha2()) * q.value, isotropic_drift(), 1e-9);
  EXPECT_NEAR(period_integral(1.0).value, 0.0, 1e-12);
  EXPECT_NEAR(std::sqrt(alpha2()), kSqrt2 - 1, 1e-15);
}

TEST(X0Shift, ShiftIsConstant) {
  EXPECT_LT(x0_shift_check(linspace(0.0, 2 * kPi, 64)), 1e-10);
  EXPECT_LT(x0_shift_check({0.0}), 1e-13);
}

TEST(AlphaGap, Inequalities) {
  const auto rep = alpha_gap_check({1.0 + 1e-6, 1.5, std::sqrt(3.0), 10.0, 1e3});
  EXPECT_TRUE(rep.all_hold);
  EXPECT_NEAR(rep.rows[2].alpha1, 2 - std::sqrt(3.0), 1e-14);
  EXPECT_LT(rep.largest_phi0_alpha_gap, 1e-5);
  EXPECT_LT(rep.smallest_phi0_frequency_gap, 1e-5);
  EXPECT_LT(alpha1(100.0) - alpha2(), 1e-3);
  EXPECT_NEAR(alpha1(1.0 + 1e-12), 1.0, 1e-5);
  EXPECT_THROW(alpha_gap_check({1.0}), DomainError);
  // alpha1 agrees with the phi3 = 0 timelike parameter.
  for (double phi0 : {1.2, 3.0}) EXPECT_NEAR(alpha1(phi0), tl(phi0).alpha(), 1e-14);
}

TEST(Bounds, X2BoundIsSharp) {
  // Brute force over phase and time.
  for (const auto& base : {iso(), iso(0.5), tl(2.0, 0.3), tl(1.2)}) {
    const double P = period(base);
    double best = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto p = GeodesicParamsd::make(base.kind(), base.phi0(), base.phi3(), P * i / 200.0);
      for (int j = 0; j < 1000; ++j) best = std::max(best, std::abs(closed_form_position(p, P * j / 1000.0).x2()));
    }
    const double bound = x2_sup_bound(base);
    EXPECT_LE(best, bound + 1e-12);
    EXPECT_GT(best, bound - 1e-3 * bound);
  }
  EXPECT_NEAR(x2_sup_bound(iso()), 4.0, 1e-14);
}

TEST(Bounds, IsotropicSweep) {
  GridSpec g;
  g.kinds = {GeodesicKind::isotropic};
  g.t0 = linspace(0.0, 1.0, 64, true);
  g.t0_fraction = true;
  const auto rep = bounding_scan(expand_grid(g));
  EXPECT_TRUE(rep.sharp_bounds_hold);
  EXPECT_NEAR(rep.x2_sup, 4.0, 1e-6);
  EXPECT_GT(rep.x2_excursions, 0u);
  EXPECT_NEAR(rep.x1_max, -std::log(alpha2()), 1e-9);
  EXPECT_NEAR(rep.x1_min, std::log(alpha2()), 1e-9);
  EXPECT_GT(rep.x1_excursions, 0u);
}

TEST(Bounds, TimelikeFViolation) {
  const auto rep = bounding_scan({tl(2.0)});
  ASSERT_TRUE(rep.first_f_violation);
  EXPECT_LT(rep.first_f_violation->x[0], 0.0);
  const auto near0 = closed_form_position(tl(2.0), 0.1);
  EXPECT_LT(near0.x0(), 0.0);
  // Lines satisfy F.
  EXPECT_EQ(bounding_scan({tl(1.25, 0.75), iso(1.0)}).f_violations, 0u);
}

TEST(Grid, Expansion) {
  GridSpec g;
  g.kinds = {GeodesicKind::timelike, GeodesicKind::isotropic};
  g.phi0 = {1.5, 2.0};
  g.phi3 = {0.0, 0.5};
  g.phi3_fraction = true;
  g.t0 = {0.0, 0.25};
  g.t0_fraction = true;
  const auto pts = expand_grid(g);
  ASSERT_EQ(pts.size(), 2u * 2u * 2u + 2u * 2u);
  EXPECT_NEAR(pts[2].phi3(), 0.5 * std::sqrt(1.25), 1e-15);
  EXPECT_NEAR(pts[1].t0(), 0.25 * period(pts[0]), 1e-15);
  EXPECT_EQ(pts.back().kind(), GeodesicKind::isotropic);
  g.phi3 = {1.5};
  EXPECT_THROW(expand_grid(g), DomainError);
}
