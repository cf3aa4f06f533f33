#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "godel/curvature.hpp"
#include "godel/metric.hpp"
#include "godel/oracle.hpp"

using namespace godel;

namespace {

std::vector<Eigen::Vector4d> random_points(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Eigen::Vector4d> out;
  for (int i = 0; i < n; ++i) out.emplace_back(u(rng), u(rng), u(rng), u(rng));
  return out;
}

MetricField cartesian_field(double a) {
  return [a](const Eigen::VectorXd& v) {
    return Eigen::MatrixXd(metric_cartesian<double>(Eigen::Vector4d(v), a).g);
  };
}

// A vector orthogonal to the matter covector: d/dx2 - e^{x1} d/dx0.
Eigen::Vector4d m_perp(const Eigen::Vector4d& x) { return {-std::exp(x[1]), 0.0, 1.0, 0.0}; }

}  // namespace

TEST(Christoffel, MatchesFiniteDifferences) {
  for (const auto& x : random_points(51, 30)) {
    const Christoffels g = christoffels(x);
    const auto fd = fd_christoffels(cartesian_field(1.0), x, 1e-6);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double scale = std::max(1.0, std::abs(g[k](i, j)));
          EXPECT_NEAR(g[k](i, j), fd[(k * 4 + i) * 4 + j], 1e-6 * scale);
        }
  }
}

TEST(Christoffel, SpotValuesAndSymmetry) {
  for (const auto& x : random_points(52, 20)) {
    const Christoffels g = christoffels(x);
    EXPECT_NEAR(g[0](0, 1), 1.0, 1e-12);
    EXPECT_NEAR(g[1](0, 2), std::exp(x[1]) / 2.0, 1e-12 * std::exp(x[1]));
    EXPECT_EQ(g[3], Eigen::Matrix4d::Zero());
    for (int k = 0; k < 4; ++k) {
      EXPECT_EQ(g[k], g[k].transpose());
      EXPECT_EQ(g[k].row(3), Eigen::RowVector4d::Zero());
    }
  }
}

TEST(Christoffel, ScaleInvariant) {
  const Eigen::Vector4d x(0.1, 0.4, -0.3, 0.0);
  const Christoffels a = christoffels(x, 1.0);
  const Christoffels b = christoffels(x, 3.0);
  for (int k = 0; k < 4; ++k) EXPECT_LT((a[k] - b[k]).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Christoffel, DerivativeMatchesFiniteDifference) {
  const Eigen::Vector4d x(0.2, -0.5, 1.0, 0.3);
  const double h = 1e-6;
  const Christoffels d = christoffels_dx1(x);
  const Christoffels p = christoffels(x + Eigen::Vector4d(0, h, 0, 0));
  const Christoffels m = christoffels(x - Eigen::Vector4d(0, h, 0, 0));
  for (int k = 0; k < 4; ++k) EXPECT_LT((d[k] - (p[k] - m[k]) / (2 * h)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Inverse, ClosedFormInverse) {
  for (const auto& x : random_points(53, 20)) {
    const Eigen::Matrix4d g = metric_cartesian<double>(x, 1.7).g;
    EXPECT_LT((g * inverse_metric_cartesian(x, 1.7) - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Ricci, OriginValues) {
  const RicciResult r = ricci_and_scalar(Eigen::Vector4d::Zero());
  EXPECT_NEAR(r.scalar, 1.0, 1e-14);
  Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
  expected(0, 0) = expected(0, 2) = expected(2, 0) = expected(2, 2) = 1.0;
  EXPECT_LT((r.ricci - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Ricci, HomogeneousAndSymmetric) {
  for (const auto& x : random_points(54, 100)) {
    const RicciResult r = ricci_and_scalar(x);
    EXPECT_NEAR(r.scalar, 1.0, 1e-8);
    EXPECT_LT((r.ricci - r.ricci.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(perfect_fluid_residual(x), 1e-8);
  }
}

TEST(Ricci, ScaleA) {
  EXPECT_NEAR(ricci_and_scalar(Eigen::Vector4d(0.3, 0.2, 0.1, 0.0), 2.0).scalar, 0.25, 1e-14);
  EXPECT_LT(perfect_fluid_residual(Eigen::Vector4d(0.3, 0.2, 0.1, 0.0), 2.0), 1e-12);
}

TEST(Ricci, MatchesFiniteDifferenceOracle) {
  for (const auto& x : random_points(55, 5)) {
    const Eigen::MatrixXd fd = fd_ricci(cartesian_field(1.0), x);
    const RicciResult r = ricci_and_scalar(x);
    const double scale = std::max(1.0, r.ricci.cwiseAbs().maxCoeff());
    EXPECT_LT((fd - r.ricci).cwiseAbs().maxCoeff() / scale, 1e-5);
  }
}

TEST(Ricci, RankOneAlongMatter) {
  const Eigen::Vector4d x(1.0, -0.7, 2.0, 0.5);
  const Eigen::Matrix4d ric = ricci_and_scalar(x).ricci;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(ric);
  int nonzero = 0;
  for (int i = 0; i < 4; ++i) nonzero += std::abs(es.eigenvalues()[i]) > 1e-10 ? 1 : 0;
  EXPECT_EQ(nonzero, 1);
  const Eigen::Vector4d u = matter_field(x).covector;
  EXPECT_LT((ric - u * u.transpose()).norm(), 1e-10);
  EXPECT_LT((ric * m_perp(x)).norm(), 1e-10);
}

TEST(Matter, UnitNorm) {
  for (const auto& x : random_points(56, 20)) {
    for (double a : {1.0, 2.5}) {
      const MatterField m = matter_field(x, a);
      const Eigen::Matrix4d g = metric_cartesian<double>(x, a).g;
      EXPECT_NEAR(m.vector.dot(g * m.vector), 1.0, 1e-12);
      EXPECT_LT((g * m.vector - m.covector).cwiseAbs().maxCoeff(), 1e-12 * std::exp(std::abs(x[1])) * a * a);
    }
  }
}

TEST(Einstein, FieldEquations) {
  EXPECT_LT(einstein_residual(Eigen::Vector4d::Zero()), 1e-8);
  for (const auto& x : random_points(57, 100)) EXPECT_LT(einstein_residual(x), 1e-8);
  EXPECT_LT(einstein_residual(Eigen::Vector4d(0.5, 0.5, 0.5, 0.5), 2.0), 1e-10);
  EXPECT_NEAR(einstein_residual(Eigen::Vector4d::Zero(), 1.0, 0.0), 0.5, 1e-12);
  EXPECT_LT(cosmological_constant(), 0.0);
  EXPECT_EQ(cosmological_constant(), -0.5);
  EXPECT_EQ(matter_density_term(2.0), 0.25);
}

TEST(Vorticity, GodelValue) {
  EXPECT_NEAR(vorticity(Eigen::Vector4d::Zero()), 1.0 / std::numbers::sqrt2, 1e-12);
  for (const auto& x : random_points(58, 50)) EXPECT_NEAR(vorticity(x), 1.0 / std::numbers::sqrt2, 1e-6);
  // omega^2 = -Lambda
  EXPECT_NEAR(vorticity(Eigen::Vector4d::Zero()) * vorticity(Eigen::Vector4d::Zero()), -cosmological_constant(), 1e-12);
}

TEST(Vorticity, FiniteDifferenceCovariantDerivative) {
  const Eigen::Vector4d x(0.3, 1.2, -0.4, 0.0);
  const auto fd = fd_christoffels(cartesian_field(1.0), x, 1e-6);
  const MatterField m = matter_field(x);
  const double h = 1e-6;
  Eigen::Matrix4d du = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 4; ++j) {
    Eigen::Vector4d dx = Eigen::Vector4d::Zero();
    dx[j] = h;
    du.col(j) = (matter_field(x + dx).covector - matter_field(x - dx).covector) / (2 * h);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) du(i, j) -= fd[(k * 4 + i) * 4 + j] * m.covector[k];
  EXPECT_LT((du - matter_covariant_derivative(x)).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_NEAR(vorticity_scalar(inverse_metric_cartesian(x), m.vector, m.covector, du), 1.0 / std::numbers::sqrt2, 1e-6);
}

TEST(Vorticity, FlatStaticFieldHasNone) {
  Eigen::Matrix4d eta = -Eigen::Matrix4d::Identity();
  eta(0, 0) = 1.0;
  const Eigen::Vector4d u(1, 0, 0, 0);
  EXPECT_EQ(vorticity_scalar(eta, u, eta * u, Eigen::Matrix4d::Zero()), 0.0);
}

TEST(Report, Fields) {
  const CurvatureReport r = curvature_report(Eigen::Vector4d(0.1, 0.2, 0.3, 0.4));
  EXPECT_NEAR(r.scalar, 1.0, 1e-12);
  EXPECT_EQ(r.lambda, -0.5);
  EXPECT_EQ(r.density_term, 1.0);
  EXPECT_NEAR(r.vorticity, 1.0 / std::numbers::sqrt2, 1e-12);
  EXPECT_LT(r.einstein_residual, 1e-12);
}
