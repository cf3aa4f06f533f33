#ifndef GODEL_ORACLE_HPP
#define GODEL_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <istream>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "godel/extremal.hpp"

// Independent numerical machinery used to check the closed forms: a generic
// integrator for the first-order extremal system on any matrix Lie algebra
// given by structure constants, plus brute-force scans, quadrature and
// finite-difference geometry.

namespace godel {

/// Structure constants C^k_{ij} of an (n+1)-dimensional algebra with basis
/// e0..en, of which e1..er are the controlled spatial directions.
class LieAlgebraSpec {
 public:
  LieAlgebraSpec() = default;
  LieAlgebraSpec(int dim, int rank);

  int dim() const { return dim_; }
  int rank() const { return rank_; }

  double C(int k, int i, int j) const { return c_[index(k, i, j)]; }
  /// Sets C^k_{ij} = v and C^k_{ji} = -v.
  void set(int k, int i, int j, double v);

  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }
  void set_basis(std::vector<Eigen::MatrixXd> basis);
  bool has_matrices() const { return !basis_.empty(); }

  /// max |C^k_{ij} + C^k_{ji}|
  double antisymmetry_residual() const;
  /// max over (i, j, k, l) of the Jacobi identity in components.
  double jacobi_residual() const;
  /// max |[B_i, B_j] - sum_k C^k_{ij} B_k| over the matrix realization.
  double realization_residual() const;

  /// Throws DomainError unless antisymmetric, Jacobi holds to 1e-12 and the
  /// rank is in [0, dim - 1].
  void validate() const;

  /// Optional extraction of chart coordinates from the matrix state.
  std::function<Eigen::VectorXd(const Eigen::MatrixXd&)> coordinates;

 private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * dim_ + i) * dim_ + j;
  }
  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> c_;
  std::vector<Eigen::MatrixXd> basis_;
};

/// Constants from a matrix realization by least squares on [B_i, B_j].
LieAlgebraSpec structure_constants_from_basis(const std::vector<Eigen::MatrixXd>& basis, int rank);

/// The Goedel algebra over the orthonormal frame (e0, e1, e2', e3) with a 6x6
/// block realization (4x4 model plus a 2x2 translation block for e3) and
/// coordinates (x0, x1, x2, x3) read off the matrix.
LieAlgebraSpec godel_algebra();

/// Text record:
///   dimension <n+1>
///   rank <r>
///   constant <k> <i> <j> <value>        (sets C^k_ij = -C^k_ji)
///   matrix <index> <rows> <cols> <row-major values...>
/// '#' starts a comment. Throws DomainError on malformed input.
LieAlgebraSpec parse_lie_algebra(std::istream& in);
std::string to_text(const LieAlgebraSpec& spec);

/// psi'_j = sum_k (C^k_{0j} psi0 psik - sum_{i=1..r} C^k_{ij} psii psik).
Eigen::VectorXd generic_adjoint_rhs(const LieAlgebraSpec& spec, const Eigen::VectorXd& psi);

/// u = psi0 e0 - sum_{i=1..r} psii ei.
Eigen::VectorXd generic_control(const LieAlgebraSpec& spec, const Eigen::VectorXd& psi);

enum class Method { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
  Method method = Method::rk4_fixed;
  double step = 1e-3;
  double tolerance = 1e-10;  // rk45 local error per unit step
  double max_span = 1e4;
  int max_rejections = 60;
  int sample_every = 1;      // rk4: keep every n-th step (the endpoint is always kept)

  void validate() const;
};

struct Monitors {
  double psi0 = 0.0;
  double psi3 = 0.0;
  double circle = 0.0;   // psi1^2 + psi2^2
  double norm = 0.0;     // (u, u) in the orthonormal frame
  double pairing = 0.0;  // psi(u)
};

struct TrajectorySample {
  double t = 0.0;
  Eigen::MatrixXd group;        // matrix state
  Eigen::VectorXd coordinates;  // via spec.coordinates, empty otherwise
  Eigen::VectorXd psi;
  Eigen::VectorXd u;
  Monitors monitors;
};

/// Integrates gamma' = gamma u(psi), psi' = generic_adjoint_rhs from the
/// identity on [0, T] (or [T, 0] when T < 0). Samples are ordered away from
/// t = 0 and include both endpoints.
std::vector<TrajectorySample> integrate(const LieAlgebraSpec& spec, const Eigen::VectorXd& psi_init,
                                        const IntegratorConfig& config, double T);

struct OracleComparison {
  double max_deviation = 0.0;                     // over all coordinates
  Eigen::Vector4d per_coordinate = Eigen::Vector4d::Zero();
  double worst_t = 0.0;
  /// max_t |m(t) - m(0)| / max(1, |t|) for psi0, psi3, psi1^2+psi2^2, (u,u), pairing.
  double drift_psi0 = 0.0;
  double drift_psi3 = 0.0;
  double drift_circle = 0.0;
  double drift_norm = 0.0;
  double drift_pairing = 0.0;
  std::size_t samples = 0;
};

/// Integrates from psi(0) reconstructed from p over [t_lo, t_hi] (t_lo <= 0 <= t_hi)
/// and compares with the closed form at every sample.
OracleComparison compare_to_closed_form(const GeodesicParamsd& p, const IntegratorConfig& config,
                                        double t_lo, double t_hi);

struct ScanResult {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  std::size_t count = 0;
};

/// Deterministic scan of f over the grid in order; ties keep the first index.
template <typename Point, typename F>
ScanResult extremum_scan(const std::vector<Point>& grid, F&& f) {
  ScanResult r;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v < r.min) {
      r.min = v;
      r.argmin = i;
    }
    if (v > r.max) {
      r.max = v;
      r.argmax = i;
    }
    ++r.count;
  }
  return r;
}

/// n equally spaced points on [lo, hi] (hi included unless open_end).
std::vector<double> linspace(double lo, double hi, std::size_t n, bool open_end = false);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) with recursive bisection to absolute tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol = 1e-10, int max_depth = 50);

using MetricField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Gamma^k_{ij} from central differences of the metric field, indexed
/// [k * n * n + i * n + j].
std::vector<double> fd_christoffels(const MetricField& g, const Eigen::VectorXd& x, double h = 1e-6);

/// Ricci tensor R_bd = R^a_bad from nested central differences.
Eigen::MatrixXd fd_ricci(const MetricField& g, const Eigen::VectorXd& x, double h = 1e-4);

/// Gaussian curvature of a 2D metric field, half the finite-difference scalar curvature.
double fd_gauss_curvature(const MetricField& g, const Eigen::Vector2d& x, double h = 1e-4);

}  // namespace godel

#endif  // GODEL_ORACLE_HPP
