#include "godel/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "godel/analysis.hpp"
#include "godel/curvature.hpp"
#include "godel/oracle.hpp"

namespace godel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

class Builder {
 public:
  Builder(int id, std::string name, const VerifyOptions& opt) : opt_(opt) {
    r_.id = id;
    r_.name = std::move(name);
  }

  void at_most(std::string label, double value, double tol, bool residual = true) {
    Measurement m{std::move(label), value, Relation::at_most, tol, 0.0, 0.0, residual, false};
    if (residual && opt_.tolerance) m.bound = *opt_.tolerance;
    m.passed = value <= m.bound;
    r_.measurements.push_back(std::move(m));
  }
  void at_least(std::string label, double value, double bound) {
    Measurement m{std::move(label), value, Relation::at_least, bound, 0.0, 0.0, false, value >= bound};
    r_.measurements.push_back(std::move(m));
  }
  void within(std::string label, double value, double lo, double hi) {
    Measurement m{std::move(label), value, Relation::within, 0.0, lo, hi, false, value >= lo && value <= hi};
    r_.measurements.push_back(std::move(m));
  }
  void note(std::string n) { r_.note = std::move(n); }
  CriterionResult done() { return std::move(r_); }

 private:
  const VerifyOptions& opt_;
  CriterionResult r_;
};

IntegratorConfig rk4_default() { return IntegratorConfig{}; }

std::vector<OracleComparison> oracle_runs() {
  std::vector<OracleComparison> out;
  for (const auto& p : standard_grid()) out.push_back(compare_to_closed_form(p, rk4_default(), -2.0 * kPi, 2.0 * kPi));
  return out;
}

CriterionResult oracle_agreement(const VerifyOptions& opt) {
  Builder b(1, "oracle agreement", opt);
  const auto grid = standard_grid();
  Eigen::Vector4d worst = Eigen::Vector4d::Zero();
  for (const auto& c : oracle_runs()) worst = worst.cwiseMax(c.per_coordinate);
  b.at_least("grid points", static_cast<double>(grid.size()), 50.0);
  for (int k = 0; k < 4; ++k) b.at_most("max |closed - rk4| x" + std::to_string(k), worst[k], 1e-7);
  return b.done();
}

CriterionResult conservation(const VerifyOptions& opt) {
  Builder b(2, "conservation", opt);
  double d0 = 0.0, d3 = 0.0, dc = 0.0, dn = 0.0;
  for (const auto& c : oracle_runs()) {
    d0 = std::max(d0, c.drift_psi0);
    d3 = std::max(d3, c.drift_psi3);
    dc = std::max(dc, c.drift_circle);
    dn = std::max(dn, c.drift_norm);
  }
  b.at_most("drift psi0 per unit t", d0, 1e-9);
  b.at_most("drift psi3 per unit t", d3, 1e-9);
  b.at_most("drift psi1^2+psi2^2 per unit t", dc, 1e-9);
  b.at_most("drift (u,u) per unit t", dn, 1e-9);
  return b.done();
}

CriterionResult period_integral_criterion(const VerifyOptions& opt) {
  Builder b(3, "period integral and x0 shift", opt);
  const double T = 2.0 * (kSqrt2 - 1.0) * kPi;
  const QuadratureResult q = period_integral();
  const auto iso = GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, 0.0, 0.0);
  b.at_most("|integral + pi|", std::abs(q.value + kPi), 1e-9);
  b.at_most("|-2 sqrt(alpha2) integral - T|", std::abs(-2.0 * std::sqrt(alpha2()) * q.value - T), 1e-9);
  b.at_most("|drift_per_period - 2(sqrt2-1)pi|", std::abs(drift_per_period(iso) - T), 1e-12);
  b.at_most("|x0(2pi) - T|", std::abs(closed_form_position(iso, 2.0 * kPi).x0() - T), 1e-10);
  b.at_most("max |x0(t+2pi) - x0(t) - T| (64 t)", x0_shift_check(linspace(0.0, 2.0 * kPi, 64)), 1e-10);
  char buf[96];
  std::snprintf(buf, sizeof buf, "integral = %.15g", q.value);
  b.note(buf);
  return b.done();
}

CriterionResult closure_criterion(const VerifyOptions& opt) {
  Builder b(4, "no closed causal geodesic", opt);
  const auto reports = no_closed_geodesic_audit(standard_grid());
  std::size_t spurious = 0, closed = 0;
  double min_drift = std::numeric_limits<double>::infinity();
  double min_return = std::numeric_limits<double>::infinity();
  double return_res = 0.0, drift_check = 0.0, formula = 0.0;
  for (const auto& r : reports) {
    spurious += r.spurious_returns;
    closed += r.closed ? 1 : 0;
    if (r.line) continue;
    min_drift = std::min(min_drift, r.drift);
    min_return = std::min(min_return, r.min_interior_return);
    return_res = std::max(return_res, r.return_residual);
    drift_check = std::max(drift_check, r.drift_check);
    if (r.params.phi3() == 0.0) {
      const double phi0 = r.params.phi0();
      const double expected = r.params.kind() == GeodesicKind::isotropic
                                  ? 2.0 * kPi * (kSqrt2 - 1.0)
                                  : 2.0 * kPi * (kSqrt2 - phi0 / std::sqrt(phi0 * phi0 + 1.0));
      formula = std::max(formula, std::abs(r.drift - expected));
    }
  }
  b.at_most("spurious simultaneous returns", static_cast<double>(spurious), 0.0, false);
  b.at_least("min interior return distance", min_return, 1e-8);
  b.at_most("max |(x1,x2)(kP)|", return_res, 1e-8);
  b.at_least("min drift per period", min_drift, 1e-12);
  b.at_most("max |drift - phi3=0 formula|", formula, 1e-10);
  b.at_most("max |x0(P) - drift|", drift_check, 1e-10);
  b.at_most("grid points with closure", static_cast<double>(closed), 0.0, false);
  b.note(std::to_string(reports.size()) + " grid points, verdict: no closed geodesic");
  return b.done();
}

CriterionResult curvature_check(const VerifyOptions& opt) {
  Builder b(5, "curvature", opt);
  std::mt19937_64 rng(1949);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double r_dev = 0.0, fluid = 0.0, einstein = 0.0, vort = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector4d x(u(rng), u(rng), u(rng), u(rng));
    const CurvatureReport c = curvature_report(x);
    r_dev = std::max(r_dev, std::abs(c.scalar - 1.0));
    fluid = std::max(fluid, c.fluid_residual);
    einstein = std::max(einstein, c.einstein_residual);
    vort = std::max(vort, std::abs(c.vorticity - 1.0 / kSqrt2));
  }
  b.at_most("max |R - 1|", r_dev, 1e-8);
  b.at_most("max |R_ik - u_i u_k|", fluid, 1e-8);
  b.at_most("max Einstein residual (Lambda = -1/2)", einstein, 1e-8);
  b.at_most("max |omega - 1/sqrt2|", vort, 1e-6);
  return b.done();
}

CriterionResult horizon(const VerifyOptions& opt) {
  Builder b(6, "horizon and closed timelike circles", opt);
  b.at_most("|g_phiphi(ln(1+sqrt2))|", std::abs(metric_cylindrical<double>(horizon_radius<double>())(2, 2)), 1e-12);
  const CtcWitness w = ctc_witness(1.0, 1000);
  std::size_t timelike = 0;
  for (double n2 : w.norm2) timelike += classify(n2).tag == CausalTag::timelike ? 1 : 0;
  b.at_least("timelike samples at r = 1 (of 1000)", static_cast<double>(timelike), 1000.0);
  bool rejected = false;
  try {
    (void)ctc_witness(0.5, 1000);
  } catch (const DomainError& e) {
    rejected = std::string(e.what()).find("spacelike") != std::string::npos;
  }
  b.at_least("r = 0.5 rejected as spacelike", rejected ? 1.0 : 0.0, 1.0);
  return b.done();
}

CriterionResult chart_coherence(const VerifyOptions& opt) {
  Builder b(7, "chart coherence", opt);
  std::mt19937_64 rng(1950);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> y(0.2, 5.0);
  std::uniform_real_distribution<double> r(0.1, 2.0);
  std::uniform_real_distribution<double> phi(-kPi, kPi);
  std::vector<Eigen::Vector4d> kundt, cyl;
  for (int i = 0; i < 100; ++i) kundt.emplace_back(coord(rng), coord(rng), y(rng), 0.0);
  for (int i = 0; i < 100; ++i) cyl.emplace_back(coord(rng), r(rng), phi(rng), 0.0);
  const PullbackReport k = pullback_residual(Chart::kundt, kundt);
  const PullbackReport c = pullback_residual(Chart::cylindrical, cyl);
  b.at_most("Kundt pullback residual", k.max_residual, 1e-8);
  b.at_most("cylindrical pullback residual", c.max_residual, 1e-6);
  b.at_most("singular sample points", static_cast<double>(k.singular_points.size() + c.singular_points.size()), 0.0,
            false);
  return b.done();
}

CriterionResult bounds(const VerifyOptions& opt) {
  Builder b(8, "bounding box", opt);
  GridSpec g;
  g.kinds = {GeodesicKind::isotropic};
  g.t0 = linspace(0.0, 1.0, 64, true);
  g.t0_fraction = true;
  auto grid = expand_grid(g);
  grid.push_back(GeodesicParamsd::make(GeodesicKind::timelike, 2.0, 0.0, 0.0));
  const BoundReport rep = bounding_scan(grid);
  const double box = 2.0 + kSqrt2;
  b.within("sweep sup|x2| against 2+sqrt2", rep.x2_sup, box - 1e-3, box + 1e-9);
  b.within("min x1", rep.x1_min, rep.x1_box_lower - 1e-9, rep.x1_box_upper + 1e-9);
  b.within("max x1", rep.x1_max, rep.x1_box_lower - 1e-9, rep.x1_box_upper + 1e-9);
  b.at_most("excess over per-geodesic sharp bounds", rep.sharp_violation, 1e-9);
  b.at_least("recorded F violations", static_cast<double>(rep.f_violations), 1.0);
  std::size_t above = 0;
  for (const auto& row : rep.rows) above += row.x1_max > rep.published_x1_upper ? 1 : 0;
  b.at_least("geodesics with x1 above 0.7", static_cast<double>(above), 1.0);
  char buf[256];
  if (rep.x2_argmax) {
    std::snprintf(buf, sizeof buf, "sup|x2| = %.12g at t0 = %.6g, t = %.6g; derived sharp bound is 4", rep.x2_sup,
                  rep.x2_argmax->params.t0(), rep.x2_argmax->t);
    b.note(buf);
  }
  return b.done();
}

CriterionResult alpha_gap_criterion(const VerifyOptions& opt) {
  Builder b(9, "alpha and frequency inequalities", opt);
  const AlphaGapReport rep = alpha_gap_check({1.0 + 1e-6, 1.5, std::sqrt(3.0), 10.0, 1e3});
  double min_gap = std::numeric_limits<double>::infinity();
  double min_freq_gap = std::numeric_limits<double>::infinity();
  for (const auto& row : rep.rows) {
    min_gap = std::min(min_gap, row.alpha_gap);
    min_freq_gap = std::min(min_freq_gap, row.frequency_gap);
  }
  b.at_least("min alpha1 - alpha2 (must be > 0)", min_gap, std::numeric_limits<double>::min());
  b.at_least("min sqrt(phi0^2+1) - sqrt2 (must be > 0)", min_freq_gap, std::numeric_limits<double>::min());
  b.at_most("alpha1(1e3) - alpha2", rep.largest_phi0_alpha_gap, 1e-5);
  b.at_most("sqrt(phi0^2+1) - sqrt2 at phi0 = 1+1e-6", rep.smallest_phi0_frequency_gap, 1e-5);
  return b.done();
}

CriterionResult golden(const VerifyOptions& opt) {
  Builder b(10, "golden spot values", opt);
  const LieAlgebraSpec spec = godel_algebra();
  struct Case {
    const char* name;
    GeodesicParamsd p;
    Eigen::Vector3d expected;
  };
  const double s3 = std::sqrt(3.0);
  const Case cases[] = {
      {"isotropic", GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, 0.0, 0.0),
       {kPi * (kSqrt2 - 2.0) / 4.0, std::log(2.0 - kSqrt2), 1.0 + kSqrt2}},
      {"timelike", GeodesicParamsd::make(GeodesicKind::timelike, s3, 0.0, 0.0),
       {kPi * (kSqrt2 - s3 / 2.0), std::log(2.0 - s3), 0.0}},
  };
  for (const auto& c : cases) {
    const Eigen::Vector3d closed = closed_form_position(c.p, kPi / 2.0).coords().head<3>();
    const auto traj = integrate(spec, adjoint_at(c.p, 0.0).psi, rk4_default(), kPi / 2.0);
    const Eigen::Vector3d numeric = traj.back().coordinates.head<3>();
    b.at_most(std::string(c.name) + " |closed - expected|", (closed - c.expected).cwiseAbs().maxCoeff(), 1e-10);
    b.at_most(std::string(c.name) + " |rk4 - expected|", (numeric - c.expected).cwiseAbs().maxCoeff(), 1e-7);
  }
  return b.done();
}

CriterionResult pmp(const VerifyOptions& opt) {
  Builder b(11, "minimum principle", opt);
  std::mt19937_64 rng(1951);
  std::uniform_real_distribution<double> phi0(1.05, 4.0);
  std::uniform_real_distribution<double> frac(-0.9, 0.9);
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  double value = 0.0, arg = 0.0, pairing = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double f0 = phi0(rng);
    const double f3 = frac(rng) * std::sqrt(f0 * f0 - 1.0);
    const auto base = GeodesicParamsd::make(GeodesicKind::timelike, f0, f3, 0.0);
    const auto p = GeodesicParamsd::make(GeodesicKind::timelike, f0, f3, phase(rng) * period(base));
    for (double t : {0.0, 1.0, 2.0}) {
      const PmpReport r = pmp_check(p, t);
      value = std::max(value, std::abs(r.min_value - 1.0));
      arg = std::max(arg, r.argmin_distance);
      pairing = std::max(pairing, r.pairing_residual);
    }
  }
  b.at_most("max |min over U - 1|", value, 1e-6);
  b.at_most("max |argmin - u(t)| (hyperboloid chart)", arg, 1e-4);
  b.at_most("max |psi(u) - (u,u)|", pairing, 1e-9);
  return b.done();
}

}  // namespace

bool CriterionResult::passed() const {
  return std::all_of(measurements.begin(), measurements.end(), [](const Measurement& m) { return m.passed; });
}

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  switch (id) {
    case 1: return oracle_agreement(options);
    case 2: return conservation(options);
    case 3: return period_integral_criterion(options);
    case 4: return closure_criterion(options);
    case 5: return curvature_check(options);
    case 6: return horizon(options);
    case 7: return chart_coherence(options);
    case 8: return bounds(options);
    case 9: return alpha_gap_criterion(options);
    case 10: return golden(options);
    case 11: return pmp(options);
    default: throw DomainError("run_criterion: criteria are numbered 1.." + std::to_string(kCriterionCount));
  }
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    out.push_back(run_criterion(id, options));
  }
  return out;
}

std::string format_measurement(const Measurement& m) {
  char buf[256];
  switch (m.relation) {
    case Relation::at_most:
      std::snprintf(buf, sizeof buf, "%s = %.6g (<= %.3g)", m.label.c_str(), m.value, m.bound);
      break;
    case Relation::at_least:
      std::snprintf(buf, sizeof buf, "%s = %.6g (>= %.3g)", m.label.c_str(), m.value, m.bound);
      break;
    case Relation::within:
      std::snprintf(buf, sizeof buf, "%s = %.12g (in [%.12g, %.12g])", m.label.c_str(), m.value, m.lower, m.upper);
      break;
  }
  return buf;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::string s;
  for (const auto& r : results) {
    char head[160];
    std::snprintf(head, sizeof head, "%-4s criterion %2d  %s\n", r.passed() ? "PASS" : "FAIL", r.id, r.name.c_str());
    s += head;
    for (const auto& m : r.measurements) s += std::string("       ") + (m.passed ? "ok   " : "FAIL ") + format_measurement(m) + "\n";
    if (!r.note.empty()) s += "       note: " + r.note + "\n";
  }
  return s;
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json arr = Json::array();
  for (const auto& r : results) {
    Json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["passed"] = r.passed();
    Json ms = Json::array();
    for (const auto& m : r.measurements) {
      Json mj;
      mj["label"] = m.label;
      mj["value"] = m.value;
      switch (m.relation) {
        case Relation::at_most: mj["at_most"] = m.bound; break;
        case Relation::at_least: mj["at_least"] = m.bound; break;
        case Relation::within: mj["within"] = {m.lower, m.upper}; break;
      }
      mj["passed"] = m.passed;
      ms.push_back(std::move(mj));
    }
    j["measurements"] = std::move(ms);
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace godel
