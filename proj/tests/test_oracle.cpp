#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "godel/curvature.hpp"
#include "godel/oracle.hpp"

using namespace godel;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

const LieAlgebraSpec& godel_spec() {
  static const LieAlgebraSpec spec = godel_algebra();
  return spec;
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
  Eigen::VectorXd v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST(Spec, GodelAlgebraConstants) {
  const auto& s = godel_spec();
  EXPECT_EQ(s.dim(), 4);
  EXPECT_EQ(s.rank(), 3);
  EXPECT_NEAR(s.C(0, 1, 2), kSqrt2, 1e-14);
  EXPECT_NEAR(s.C(2, 1, 2), -1.0, 1e-14);
  EXPECT_NEAR(s.C(2, 2, 1), 1.0, 1e-14);
  EXPECT_LT(s.jacobi_residual(), 1e-14);
  EXPECT_LT(s.realization_residual(), 1e-14);
  const auto c = structure_constants();
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(s.C(k, i, j), c[k][i][j], 1e-14);
}

TEST(Spec, GenericRhsReproducesGodelRhs) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const AdjointStated psi(1.0 + std::abs(u(rng)), u(rng), u(rng), u(rng));
    const Eigen::VectorXd generic = generic_adjoint_rhs(godel_spec(), psi.psi);
    EXPECT_LT((generic - adjoint_rhs(psi, psi[0]).psi).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Spec, AbelianAndHandExamples) {
  const LieAlgebraSpec abelian(4, 3);
  EXPECT_EQ(generic_adjoint_rhs(abelian, vec4(1, 2, 3, 4)), Eigen::VectorXd::Zero(4));

  LieAlgebraSpec s(3, 2);
  s.set(0, 1, 2, 1.0);
  Eigen::VectorXd psi(3);
  psi << 1.5, -0.4, 0.9;
  Eigen::VectorXd expected(3);
  expected << 0.0, psi[0] * psi[2], -psi[0] * psi[1];
  EXPECT_LT((generic_adjoint_rhs(s, psi) - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(generic_adjoint_rhs(s, vec4(1, 0, 0, 0)), DomainError);
}

TEST(Spec, RankLimitsTheControl) {
  LieAlgebraSpec s(4, 2);
  const Eigen::VectorXd u = generic_control(s, vec4(2, 1, 1, 1));
  EXPECT_EQ(u, vec4(2, -1, -1, 0));
  EXPECT_THROW(LieAlgebraSpec(3, 3), DomainError);
}

TEST(Spec, TextRoundTrip) {
  const std::string text = to_text(godel_spec());
  std::istringstream in(text);
  const LieAlgebraSpec back = parse_lie_algebra(in);
  EXPECT_EQ(back.dim(), 4);
  EXPECT_EQ(back.rank(), 3);
  EXPECT_TRUE(back.has_matrices());
  EXPECT_LT(back.realization_residual(), 1e-14);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(back.C(k, i, j), godel_spec().C(k, i, j));
}

TEST(Spec, ParserRejectsMalformedInput) {
  for (const char* bad : {"rank 1\n", "dimension 3\nconstant 0 1\n", "dimension 3\nbogus 1\n",
                          "dimension 2\nconstant 0 0 5 1.0\n", "dimension 3\nmatrix 0 2 2 1 0 0\n",
                          "dimension 2\nrank 1 extra\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_lie_algebra(in), DomainError) << bad;
  }
}

TEST(Spec, ParserRejectsJacobiViolation) {
  // [e0,e1] = e1, [e1,e2] = e0, [e0,e2] = 0 fails Jacobi.
  std::istringstream in("dimension 3\nconstant 1 0 1 1\nconstant 0 1 2 1\n# comment\n");
  EXPECT_THROW(parse_lie_algebra(in), DomainError);
}

TEST(Integrate, LineStaysOnAxis) {
  const auto traj = integrate(godel_spec(), vec4(1, 0, 0, 0), IntegratorConfig{}, 5.0);
  EXPECT_EQ(traj.front().t, 0.0);
  EXPECT_EQ(traj.back().t, 5.0);
  for (const auto& s : traj) {
    EXPECT_NEAR(s.coordinates[0], s.t, 1e-12);
    EXPECT_LT(s.coordinates.tail<3>().cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Integrate, IsotropicPeriod) {
  const auto traj = integrate(godel_spec(), vec4(1, 0, 1, 0), IntegratorConfig{}, 2.0 * kPi);
  const auto& x = traj.back().coordinates;
  EXPECT_NEAR(x[1], 0.0, 1e-8);
  EXPECT_NEAR(x[2], 0.0, 1e-8);
  EXPECT_NEAR(x[0], 2.0 * kPi * (kSqrt2 - 1.0), 1e-8);
}

TEST(Integrate, TimelikeGoldenByRichardson) {
  IntegratorConfig c1;
  c1.step = 2e-3;
  IntegratorConfig c2;
  c2.step = 1e-3;
  const auto a = integrate(godel_spec(), vec4(std::sqrt(3.0), 0, kSqrt2, 0), c1, kPi / 2).back().coordinates;
  const auto b = integrate(godel_spec(), vec4(std::sqrt(3.0), 0, kSqrt2, 0), c2, kPi / 2).back().coordinates;
  const Eigen::VectorXd extrapolated = b + (b - a) / 15.0;
  EXPECT_NEAR(extrapolated[0], kPi * (kSqrt2 - std::sqrt(3.0) / 2.0), 1e-8);
  EXPECT_NEAR(extrapolated[1], std::log(2.0 - std::sqrt(3.0)), 1e-8);
  EXPECT_NEAR(extrapolated[2], 0.0, 1e-8);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Integrate, NegativeSpanIsOrderedAwayFromZero) {
  const auto traj = integrate(godel_spec(), vec4(1, 0, 1, 0), IntegratorConfig{}, -1.0);
  ASSERT_GT(traj.size(), 2u);
  EXPECT_EQ(traj.front().t, 0.0);
  EXPECT_EQ(traj.back().t, -1.0);
  for (std::size_t i = 1; i < traj.size(); ++i) EXPECT_LT(traj[i].t, traj[i - 1].t);
}

TEST(Integrate, RejectsBadInput) {
  EXPECT_THROW(integrate(LieAlgebraSpec(4, 3), vec4(1, 0, 0, 0), IntegratorConfig{}, 1.0), DomainError);
  EXPECT_THROW(integrate(godel_spec(), vec4(-1, 0, 0, 0), IntegratorConfig{}, 1.0), DomainError);
  IntegratorConfig bad;
  bad.step = 0.0;
  EXPECT_THROW(integrate(godel_spec(), vec4(1, 0, 1, 0), bad, 1.0), DomainError);
  IntegratorConfig tiny;
  tiny.max_span = 1.0;
  EXPECT_THROW(integrate(godel_spec(), vec4(1, 0, 1, 0), tiny, 2.0), DomainError);
}

TEST(Integrate, AdaptiveMatchesClosedForm) {
  IntegratorConfig c;
  c.method = Method::rk45_adaptive;
  c.tolerance = 1e-12;
  const auto p = GeodesicParamsd::make(GeodesicKind::timelike, 2.2, -0.6, 0.4);
  EXPECT_LT(compare_to_closed_form(p, c, -2 * kPi, 2 * kPi).max_deviation, 1e-9);
}

TEST(Compare, SpecExamples) {
  const IntegratorConfig c;
  const auto iso = GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, 0.0, 0.0);
  const auto tl = GeodesicParamsd::make(GeodesicKind::timelike, std::sqrt(3.0), 0.0, 0.0);
  const auto line = GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, 1.0, 0.0);
  EXPECT_LT(compare_to_closed_form(iso, c, -2 * kPi, 2 * kPi).max_deviation, 1e-8);
  EXPECT_LT(compare_to_closed_form(tl, c, -2 * kPi, 2 * kPi).max_deviation, 1e-8);
  EXPECT_LT(compare_to_closed_form(line, c, -2 * kPi, 2 * kPi).max_deviation, 1e-12);
  EXPECT_THROW(compare_to_closed_form(iso, c, 1.0, 2.0), DomainError);
}

TEST(Compare, FourthOrderConvergence) {
  const auto p = GeodesicParamsd::make(GeodesicKind::timelike, std::sqrt(3.0), 0.4, 0.2);
  IntegratorConfig coarse;
  coarse.step = 0.04;
  IntegratorConfig fine;
  fine.step = 0.02;
  const double e1 = compare_to_closed_form(p, coarse, 0.0, 2 * kPi).max_deviation;
  const double e2 = compare_to_closed_form(p, fine, 0.0, 2 * kPi).max_deviation;
  EXPECT_GT(e1 / e2, 12.0) << e1 << " " << e2;
}

TEST(Compare, RandomParamsAndConservation) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const bool timelike = i % 2 == 1;
    const double phi0 = timelike ? 1.0 + 3.0 * u(rng) : 1.0;
    const double bound = timelike ? std::sqrt(phi0 * phi0 - 1.0) : 1.0;
    const auto p = GeodesicParamsd::make(timelike ? GeodesicKind::timelike : GeodesicKind::isotropic, phi0,
                                         (2 * u(rng) - 1) * bound, 2 * kPi * u(rng));
    const auto c = compare_to_closed_form(p, IntegratorConfig{}, -2 * kPi, 2 * kPi);
    EXPECT_LT(c.max_deviation, 1e-7) << i;
    EXPECT_LT(c.drift_psi0, 1e-9);
    EXPECT_LT(c.drift_psi3, 1e-9);
    EXPECT_LT(c.drift_circle, 1e-9);
    EXPECT_LT(c.drift_norm, 1e-9);
    EXPECT_LT(c.drift_pairing, 1e-9);
  }
}

TEST(Scan, DeterministicExtrema) {
  const std::vector<double> one{2.5};
  const auto r1 = extremum_scan(one, [](double x) { return x * x; });
  EXPECT_EQ(r1.min, 6.25);
  EXPECT_EQ(r1.max, 6.25);
  const std::vector<double> grid{1.0, -1.0, 3.0, -3.0};
  const auto r = extremum_scan(grid, [](double x) { return x * x; });
  EXPECT_EQ(r.argmax, 2u);
  EXPECT_EQ(r.argmin, 0u);
  EXPECT_EQ(r.count, 4u);
}

TEST(Scan, Linspace) {
  const auto v = linspace(0.0, 1.0, 5);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 1.0);
  const auto w = linspace(0.0, 1.0, 4, true);
  EXPECT_EQ(w.back(), 0.75);
  EXPECT_TRUE(linspace(0.0, 1.0, 0).empty());
}

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(integrate_adaptive([](double t) { return std::sin(t); }, 0.0, kPi).value, 2.0, 1e-13);
  EXPECT_NEAR(integrate_adaptive([](double t) { return std::exp(-t * t); }, -6.0, 6.0).value, std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(integrate_adaptive([](double t) { return 1.0 / std::sqrt(t); }, 1e-12, 1.0, 1e-9).value, 2.0, 1e-5);
  EXPECT_THROW(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, 0.0), DomainError);
}

TEST(FiniteDifference, SphereAndHyperbolicPlane) {
  const MetricField sphere = [](const Eigen::VectorXd& v) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::pow(std::sin(v[0]), 2);
    return m;
  };
  const MetricField half_plane = [](const Eigen::VectorXd& v) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) / (v[1] * v[1]));
  };
  EXPECT_NEAR(fd_gauss_curvature(sphere, Eigen::Vector2d(1.1, 0.4)), 1.0, 1e-6);
  EXPECT_NEAR(fd_gauss_curvature(half_plane, Eigen::Vector2d(0.3, 1.7)), -1.0, 1e-6);
}

// The spatial quotient of the 3D factor in the Kundt chart is the Lobachevsky plane.
TEST(FiniteDifference, KundtSpatialQuotientHasCurvatureMinusOne) {
  const MetricField h = [](const Eigen::VectorXd& v) {
    const auto g = metric_kundt<double>(Eigen::Vector4d(0.0, v[0], v[1], 0.0)).g;
    Eigen::MatrixXd q(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) q(i, j) = -(g(i + 1, j + 1) - g(0, i + 1) * g(0, j + 1) / g(0, 0));
    return q;
  };
  for (double y : {0.4, 1.0, 3.0}) EXPECT_NEAR(fd_gauss_curvature(h, Eigen::Vector2d(0.2, y)), -1.0, 1e-5) << y;
}

TEST(FiniteDifference, ChristoffelsOfFlatMetricVanish) {
  const MetricField flat = [](const Eigen::VectorXd&) {
    Eigen::MatrixXd m = -Eigen::MatrixXd::Identity(4, 4);
    m(0, 0) = 1.0;
    return m;
  };
  for (double g : fd_christoffels(flat, Eigen::VectorXd::Zero(4))) EXPECT_EQ(g, 0.0);
}
