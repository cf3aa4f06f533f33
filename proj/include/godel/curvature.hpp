#ifndef GODEL_CURVATURE_HPP
#define GODEL_CURVATURE_HPP

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "godel/group.hpp"

namespace godel {

/// Gamma^k_{ij} stored as gamma[k](i, j).
using Christoffels = std::array<Eigen::Matrix4d, 4>;

/// Closed-form inverse of the Cartesian metric with scale a.
Eigen::Matrix4d inverse_metric_cartesian(const Eigen::Vector4d& x, double a = 1.0);

/// Levi-Civita connection of the Cartesian metric, from the exact
/// x1-derivative of the metric and the closed-form inverse.
Christoffels christoffels(const Eigen::Vector4d& x, double a = 1.0);

/// d Gamma^k_{ij} / dx1, the only nonvanishing derivative.
Christoffels christoffels_dx1(const Eigen::Vector4d& x, double a = 1.0);

struct RicciResult {
  Eigen::Matrix4d ricci = Eigen::Matrix4d::Zero();
  double scalar = 0.0;
};

/// R_bd = R^a_{bad} with R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
/// + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}.
RicciResult ricci_and_scalar(const Eigen::Vector4d& x, double a = 1.0);

/// Normalized 4-velocity of matter: the vector (1/a) d/dx0 and its lowered
/// form a (1, 0, e^{x1}, 0).
struct MatterField {
  Eigen::Vector4d vector = Eigen::Vector4d::Zero();
  Eigen::Vector4d covector = Eigen::Vector4d::Zero();
};
MatterField matter_field(const Eigen::Vector4d& x, double a = 1.0);

/// Lambda = -R/2 = -1/(2a^2).
inline double cosmological_constant(double a = 1.0) { return -0.5 / (a * a); }

/// 8 pi kappa rho = 1/a^2.
inline double matter_density_term(double a = 1.0) { return 1.0 / (a * a); }

/// max |R_ik - (R/2) g_ik - (1/a^2) u_i u_k - Lambda g_ik|. Lambda defaults
/// to cosmological_constant(a).
double einstein_residual(const Eigen::Vector4d& x, double a = 1.0,
                         std::optional<double> lambda = std::nullopt);

/// max |R_ik - (1/a^2) u_i u_k|.
double perfect_fluid_residual(const Eigen::Vector4d& x, double a = 1.0);

/// sqrt(omega_ij omega^ij / 2) for omega_ij the antisymmetric part of the
/// covariant derivative u_{i;j}, projected orthogonally to u.
double vorticity_scalar(const Eigen::Matrix4d& ginv, const Eigen::Vector4d& u_vec,
                        const Eigen::Vector4d& u_cov, const Eigen::Matrix4d& u_cov_deriv);

/// u_{i;j} = d_j u_i - Gamma^k_{ij} u_k for the matter field.
Eigen::Matrix4d matter_covariant_derivative(const Eigen::Vector4d& x, double a = 1.0);

double vorticity(const Eigen::Vector4d& x, double a = 1.0);

struct CurvatureReport {
  Eigen::Vector4d point = Eigen::Vector4d::Zero();
  double a = 1.0;
  Christoffels gamma{};
  Eigen::Matrix4d ricci = Eigen::Matrix4d::Zero();
  double scalar = 0.0;
  double einstein_residual = 0.0;
  double fluid_residual = 0.0;
  double lambda = 0.0;
  double density_term = 0.0;  // 8 pi kappa rho
  double vorticity = 0.0;
};

CurvatureReport curvature_report(const Eigen::Vector4d& x, double a = 1.0);

}  // namespace godel

#endif  // GODEL_CURVATURE_HPP
