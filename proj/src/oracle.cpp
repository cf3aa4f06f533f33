#include "godel/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace godel {

LieAlgebraSpec::LieAlgebraSpec(int dim, int rank) : dim_(dim), rank_(rank) {
  if (dim < 1) throw DomainError("LieAlgebraSpec: dimension must be positive");
  if (rank < 0 || rank > dim - 1) throw DomainError("LieAlgebraSpec: rank must lie in [0, dim - 1]");
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

void LieAlgebraSpec::set(int k, int i, int j, double v) {
  if (k < 0 || i < 0 || j < 0 || k >= dim_ || i >= dim_ || j >= dim_) {
    throw DomainError("LieAlgebraSpec: structure constant index out of range");
  }
  c_[index(k, i, j)] = v;
  c_[index(k, j, i)] = -v;
}

void LieAlgebraSpec::set_basis(std::vector<Eigen::MatrixXd> basis) {
  if (!basis.empty()) {
    if (static_cast<int>(basis.size()) != dim_) {
      throw DomainError("LieAlgebraSpec: need one basis matrix per dimension");
    }
    for (const auto& b : basis) {
      if (b.rows() != basis.front().rows() || b.cols() != b.rows()) {
        throw DomainError("LieAlgebraSpec: basis matrices must be square and of equal size");
      }
    }
  }
  basis_ = std::move(basis);
}

double LieAlgebraSpec::antisymmetry_residual() const {
  double r = 0.0;
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r = std::max(r, std::abs(C(k, i, j) + C(k, j, i)));
  return r;
}

double LieAlgebraSpec::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m) {
            s += C(m, i, j) * C(l, m, k) + C(m, j, k) * C(l, m, i) + C(m, k, i) * C(l, m, j);
          }
          r = std::max(r, std::abs(s));
        }
  return r;
}

double LieAlgebraSpec::realization_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_ && has_matrices(); ++i)
    for (int j = 0; j < dim_; ++j) {
      Eigen::MatrixXd diff = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      for (int k = 0; k < dim_; ++k) diff -= C(k, i, j) * basis_[k];
      r = std::max(r, diff.cwiseAbs().maxCoeff());
    }
  return r;
}

void LieAlgebraSpec::validate() const {
  if (dim_ < 1) throw DomainError("LieAlgebraSpec: empty algebra");
  if (antisymmetry_residual() > 0.0) throw DomainError("LieAlgebraSpec: constants are not antisymmetric");
  const double jac = jacobi_residual();
  if (jac > 1e-12) {
    std::ostringstream msg;
    msg << "LieAlgebraSpec: Jacobi identity residual " << jac << " exceeds 1e-12";
    throw DomainError(msg.str());
  }
}

LieAlgebraSpec structure_constants_from_basis(const std::vector<Eigen::MatrixXd>& basis, int rank) {
  const int dim = static_cast<int>(basis.size());
  LieAlgebraSpec spec(dim, rank);
  if (dim == 0) return spec;
  const auto m = basis.front().rows();
  Eigen::MatrixXd A(m * m, dim);
  for (int k = 0; k < dim; ++k) A.col(k) = basis[k].reshaped();
  const auto solver = A.colPivHouseholderQr();
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const Eigen::MatrixXd comm = basis[i] * basis[j] - basis[j] * basis[i];
      const Eigen::VectorXd c = solver.solve(Eigen::VectorXd(comm.reshaped()));
      for (int k = 0; k < dim; ++k) spec.set(k, i, j, std::abs(c[k]) < 1e-14 ? 0.0 : c[k]);
    }
  spec.set_basis(basis);
  return spec;
}

LieAlgebraSpec godel_algebra() {
  const double s2 = std::numbers::sqrt2;
  std::vector<Eigen::MatrixXd> basis(4, Eigen::MatrixXd::Zero(6, 6));
  basis[0](2, 3) = 1.0;                         // e0
  basis[1](0, 0) = -1.0;                        // e1
  basis[1](1, 3) = 1.0;
  basis[2](2, 3) = s2;                          // e2' = sqrt2 (e0 - e2)
  basis[2](0, 3) = -s2;
  basis[3](4, 5) = 1.0;                         // e3, central
  LieAlgebraSpec spec = structure_constants_from_basis(basis, 3);
  spec.coordinates = [](const Eigen::MatrixXd& g) {
    Eigen::VectorXd x(4);
    x << g(2, 3), g(1, 3), g(0, 3), g(4, 5);
    return x;
  };
  return spec;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

LieAlgebraSpec parse_lie_algebra(std::istream& in) {
  int dim = -1;
  int rank = -1;
  struct Constant {
    int k, i, j;
    double v;
  };
  std::vector<Constant> constants;
  std::vector<std::pair<int, Eigen::MatrixXd>> matrices;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "parse_lie_algebra: line " << line_no << ": " << why;
    throw DomainError(msg.str());
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(strip_comment(raw));
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "dimension") {
      if (!(ls >> dim) || dim < 1) fail("bad dimension");
    } else if (key == "rank") {
      if (!(ls >> rank) || rank < 0) fail("bad rank");
    } else if (key == "constant") {
      Constant c{};
      if (!(ls >> c.k >> c.i >> c.j >> c.v)) fail("constant needs k i j value");
      constants.push_back(c);
    } else if (key == "matrix") {
      int idx = 0;
      int rows = 0;
      int cols = 0;
      if (!(ls >> idx >> rows >> cols) || rows < 1 || cols < 1) fail("matrix needs index rows cols");
      Eigen::MatrixXd m(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
          if (!(ls >> m(r, c))) fail("matrix has too few values");
      matrices.emplace_back(idx, std::move(m));
    } else {
      fail("unknown key '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
  }
  if (dim < 1) throw DomainError("parse_lie_algebra: missing dimension");
  if (rank < 0) rank = dim - 1;
  LieAlgebraSpec spec(dim, rank);
  for (const auto& c : constants) spec.set(c.k, c.i, c.j, c.v);
  if (!matrices.empty()) {
    std::vector<Eigen::MatrixXd> basis(dim);
    for (auto& [idx, m] : matrices) {
      if (idx < 0 || idx >= dim) throw DomainError("parse_lie_algebra: matrix index out of range");
      basis[idx] = std::move(m);
    }
    for (const auto& b : basis)
      if (b.size() == 0) throw DomainError("parse_lie_algebra: incomplete matrix realization");
    spec.set_basis(std::move(basis));
  }
  spec.validate();
  return spec;
}

std::string to_text(const LieAlgebraSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << "dimension " << spec.dim() << "\n";
  out << "rank " << spec.rank() << "\n";
  for (int k = 0; k < spec.dim(); ++k)
    for (int i = 0; i < spec.dim(); ++i)
      for (int j = i + 1; j < spec.dim(); ++j)
        if (spec.C(k, i, j) != 0.0) out << "constant " << k << ' ' << i << ' ' << j << ' ' << spec.C(k, i, j) << "\n";
  for (int idx = 0; idx < static_cast<int>(spec.basis().size()); ++idx) {
    const auto& m = spec.basis()[idx];
    out << "matrix " << idx << ' ' << m.rows() << ' ' << m.cols();
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) out << ' ' << m(r, c);
    out << "\n";
  }
  return out.str();
}

Eigen::VectorXd generic_adjoint_rhs(const LieAlgebraSpec& spec, const Eigen::VectorXd& psi) {
  const int n = spec.dim();
  if (psi.size() != n) throw DomainError("generic_adjoint_rhs: dimension mismatch");
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      double inner = spec.C(k, 0, j) * psi[0];
      for (int i = 1; i <= spec.rank(); ++i) inner -= spec.C(k, i, j) * psi[i];
      s += inner * psi[k];
    }
    d[j] = s;
  }
  return d;
}

Eigen::VectorXd generic_control(const LieAlgebraSpec& spec, const Eigen::VectorXd& psi) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(spec.dim());
  u[0] = psi[0];
  for (int i = 1; i <= spec.rank(); ++i) u[i] = -psi[i];
  return u;
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0)) throw DomainError("IntegratorConfig: step must be positive");
  if (!(tolerance > 0.0)) throw DomainError("IntegratorConfig: tolerance must be positive");
  if (!(max_span > 0.0)) throw DomainError("IntegratorConfig: max_span must be positive");
  if (sample_every < 1) throw DomainError("IntegratorConfig: sample_every must be at least 1");
}

namespace {

// Flat state: psi (dim) followed by the column-major matrix state (m*m).
struct Flow {
  const LieAlgebraSpec& spec;
  Eigen::Index m;

  Eigen::VectorXd operator()(const Eigen::VectorXd& y) const {
    const int n = spec.dim();
    Eigen::VectorXd dy(y.size());
    const Eigen::VectorXd psi = y.head(n);
    dy.head(n) = generic_adjoint_rhs(spec, psi);
    const Eigen::VectorXd u = generic_control(spec, psi);
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < n; ++k)
      if (u[k] != 0.0) U += u[k] * spec.basis()[k];
    const Eigen::Map<const Eigen::MatrixXd> G(y.data() + n, m, m);
    Eigen::Map<Eigen::MatrixXd>(dy.data() + n, m, m) = G * U;
    return dy;
  }
};

TrajectorySample make_sample(const LieAlgebraSpec& spec, Eigen::Index m, double t, const Eigen::VectorXd& y) {
  const int n = spec.dim();
  TrajectorySample s;
  s.t = t;
  s.psi = y.head(n);
  s.group = Eigen::Map<const Eigen::MatrixXd>(y.data() + n, m, m);
  if (spec.coordinates) s.coordinates = spec.coordinates(s.group);
  s.u = generic_control(spec, s.psi);
  s.monitors.psi0 = s.psi[0];
  s.monitors.psi3 = n > 3 ? s.psi[3] : 0.0;
  s.monitors.circle = n > 2 ? s.psi[1] * s.psi[1] + s.psi[2] * s.psi[2] : 0.0;
  s.monitors.norm = s.u[0] * s.u[0] - s.u.tail(n - 1).squaredNorm();
  s.monitors.pairing = s.psi.dot(s.u);
  return s;
}

}  // namespace

std::vector<TrajectorySample> integrate(const LieAlgebraSpec& spec, const Eigen::VectorXd& psi_init,
                                        const IntegratorConfig& config, double T) {
  config.validate();
  if (!spec.has_matrices()) throw DomainError("integrate: the algebra needs a matrix realization");
  if (psi_init.size() != spec.dim()) throw DomainError("integrate: dimension mismatch");
  if (!(std::abs(T) <= config.max_span)) throw DomainError("integrate: span exceeds max_span");
  if (!(psi_init[0] > 0.0)) throw DomainError("integrate: psi0 must be positive");

  const int n = spec.dim();
  const Eigen::Index m = spec.basis().front().rows();
  const Flow flow{spec, m};

  Eigen::VectorXd y(n + m * m);
  y.head(n) = psi_init;
  Eigen::Map<Eigen::MatrixXd>(y.data() + n, m, m).setIdentity();

  std::vector<TrajectorySample> out;
  out.push_back(make_sample(spec, m, 0.0, y));
  if (T == 0.0) return out;
  const double dir = T > 0.0 ? 1.0 : -1.0;

  if (config.method == Method::rk4_fixed) {
    const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(T) / config.step - 1e-9)));
    const double h = T / static_cast<double>(steps);
    out.reserve(steps / config.sample_every + 2);
    for (long i = 1; i <= steps; ++i) {
      const Eigen::VectorXd k1 = flow(y);
      const Eigen::VectorXd k2 = flow(y + 0.5 * h * k1);
      const Eigen::VectorXd k3 = flow(y + 0.5 * h * k2);
      const Eigen::VectorXd k4 = flow(y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (i % config.sample_every == 0 || i == steps) {
        out.push_back(make_sample(spec, m, i == steps ? T : h * static_cast<double>(i), y));
      }
    }
    if (!y.allFinite()) throw DomainError("integrate: state became non-finite");
    return out;
  }

  // Dormand-Prince 5(4).
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2;
  (void)c3;
  (void)c4;
  (void)c5;

  double t = 0.0;
  double h = dir * std::min(config.step, std::abs(T));
  int rejections = 0;
  Eigen::VectorXd k1 = flow(y);
  while (dir * (T - t) > 0.0) {
    if (dir * (t + h - T) > 0.0) h = T - t;
    const Eigen::VectorXd k2 = flow(y + h * (a21 * k1));
    const Eigen::VectorXd k3 = flow(y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = flow(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = flow(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 = flow(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = flow(y5);
    const Eigen::VectorXd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const Eigen::VectorXd scale = (1.0 + y.cwiseAbs().array().max(y5.cwiseAbs().array())).matrix();
    const double err_norm = (err.cwiseAbs().array() / scale.array()).maxCoeff() /
                            (config.tolerance * std::max(std::abs(h), 1e-300));
    if (err_norm <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
      rejections = 0;
      out.push_back(make_sample(spec, m, t, y));
    } else if (++rejections > config.max_rejections) {
      throw DomainError("integrate: adaptive step rejected too many times");
    }
    const double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-14) throw DomainError("integrate: adaptive step underflow");
  }
  if (!y.allFinite()) throw DomainError("integrate: state became non-finite");
  return out;
}

OracleComparison compare_to_closed_form(const GeodesicParamsd& p, const IntegratorConfig& config,
                                        double t_lo, double t_hi) {
  if (t_lo > 0.0 || t_hi < 0.0) throw DomainError("compare_to_closed_form: span must contain 0");
  static const LieAlgebraSpec spec = godel_algebra();
  const Eigen::VectorXd psi0 = adjoint_at(p, 0.0).psi;
  OracleComparison cmp;
  Monitors ref;
  bool have_ref = false;
  auto visit = [&](const std::vector<TrajectorySample>& samples) {
    for (const auto& s : samples) {
      if (!have_ref) {
        ref = s.monitors;
        have_ref = true;
      }
      const Eigen::Vector4d closed = closed_form_position(p, s.t).coords();
      const Eigen::Vector4d dev = (closed - s.coordinates).cwiseAbs();
      cmp.per_coordinate = cmp.per_coordinate.cwiseMax(dev);
      if (dev.maxCoeff() > cmp.max_deviation) {
        cmp.max_deviation = dev.maxCoeff();
        cmp.worst_t = s.t;
      }
      const double w = 1.0 / std::max(1.0, std::abs(s.t));
      cmp.drift_psi0 = std::max(cmp.drift_psi0, std::abs(s.monitors.psi0 - ref.psi0) * w);
      cmp.drift_psi3 = std::max(cmp.drift_psi3, std::abs(s.monitors.psi3 - ref.psi3) * w);
      cmp.drift_circle = std::max(cmp.drift_circle, std::abs(s.monitors.circle - ref.circle) * w);
      cmp.drift_norm = std::max(cmp.drift_norm, std::abs(s.monitors.norm - ref.norm) * w);
      cmp.drift_pairing = std::max(cmp.drift_pairing, std::abs(s.monitors.pairing - ref.pairing) * w);
      ++cmp.samples;
    }
  };
  if (t_hi > 0.0) visit(integrate(spec, psi0, config, t_hi));
  if (t_lo < 0.0) visit(integrate(spec, psi0, config, t_lo));
  if (t_hi == 0.0 && t_lo == 0.0) visit(integrate(spec, psi0, config, 0.0));
  return cmp;
}

std::vector<double> linspace(double lo, double hi, std::size_t n, bool open_end) {
  std::vector<double> v;
  if (n == 0) return v;
  v.reserve(n);
  if (n == 1) {
    v.push_back(lo);
    return v;
  }
  const double denom = open_end ? static_cast<double>(n) : static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * static_cast<double>(i) / denom);
  if (!open_end) v.back() = hi;
  return v;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

QuadratureResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kXgk[j];
    const double fs = f(c - dx) + f(c + dx);
    kron += kWgk[j] * fs;
    if (j % 2 == 1) gauss += kWg[j / 2] * fs;
  }
  return {kron * hl, std::abs((kron - gauss) * hl), 15};
}

QuadratureResult adapt(const std::function<double(double)>& f, double a, double b, double tol,
                       int depth, const QuadratureResult& whole) {
  if (whole.error <= tol || depth <= 0) return whole;
  const double m = 0.5 * (a + b);
  const QuadratureResult left = gk15(f, a, m);
  const QuadratureResult right = gk15(f, m, b);
  const QuadratureResult l = adapt(f, a, m, 0.5 * tol, depth - 1, left);
  const QuadratureResult r = adapt(f, m, b, 0.5 * tol, depth - 1, right);
  return {l.value + r.value, l.error + r.error, whole.evaluations + l.evaluations + r.evaluations};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_depth) {
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");
  return adapt(f, a, b, tol, max_depth, gk15(f, a, b));
}

std::vector<double> fd_christoffels(const MetricField& g, const Eigen::VectorXd& x, double h) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::MatrixXd> dg(n);
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(n);
    dx[l] = h;
    dg[l] = (g(x + dx) - g(x - dx)) / (2.0 * h);
  }
  const Eigen::MatrixXd ginv = g(x).inverse();
  std::vector<double> gamma(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        gamma[(k * n + i) * n + j] = 0.5 * s;
      }
  return gamma;
}

Eigen::MatrixXd fd_ricci(const MetricField& g, const Eigen::VectorXd& x, double h) {
  const int n = static_cast<int>(x.size());
  const double inner = h / 10.0;
  const auto G = fd_christoffels(g, x, inner);
  std::vector<std::vector<double>> dG(n);
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(n);
    dx[c] = h;
    const auto gp = fd_christoffels(g, x + dx, inner);
    const auto gm = fd_christoffels(g, x - dx, inner);
    dG[c].resize(gp.size());
    for (std::size_t q = 0; q < gp.size(); ++q) dG[c][q] = (gp[q] - gm[q]) / (2.0 * h);
  }
  auto at = [n](const std::vector<double>& v, int k, int i, int j) { return v[(k * n + i) * n + j]; };
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) {
        // R^a_{bad} = d_a Gamma^a_{db} - d_d Gamma^a_{ab} + Gamma^a_{ae} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{ab}
        s += at(dG[a], a, d, b) - at(dG[d], a, a, b);
        for (int e = 0; e < n; ++e) s += at(G, a, a, e) * at(G, e, d, b) - at(G, a, d, e) * at(G, e, a, b);
      }
      ric(b, d) = s;
    }
  return ric;
}

double fd_gauss_curvature(const MetricField& g, const Eigen::Vector2d& x, double h) {
  const Eigen::VectorXd xv = x;
  const Eigen::MatrixXd ric = fd_ricci(g, xv, h);
  const Eigen::MatrixXd ginv = g(xv).inverse();
  return 0.5 * (ginv.cwiseProduct(ric)).sum();
}

}  // namespace godel
