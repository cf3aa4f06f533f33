// godel: trace geodesics, run the acceptance checks, sweep parameter grids
// and convert sampled curves between charts.
//
// Exit codes: 0 success, 1 input or validation error, 2 verification failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "godel/analysis.hpp"
#include "godel/extremal.hpp"
#include "godel/io.hpp"
#include "godel/oracle.hpp"
#include "godel/verification.hpp"

namespace fs = std::filesystem;
using namespace godel;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailed = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Eigen::Vector4d parse_vec4(const std::string& s, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(what + ": cannot parse '" + item + "'");
    }
  }
  if (v.size() != 4) throw InputError(what + " needs four comma-separated reals");
  return {v[0], v[1], v[2], v[3]};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// trace ---------------------------------------------------------------------

struct TraceArgs {
  std::string kind;
  double phi0 = 1.0;
  double phi3 = 0.0;
  double t0 = 0.0;
  std::string psi;
  std::string base;
  double t_min = 0.0;
  double t_max = 2.0 * std::numbers::pi;
  int steps = 100;
  std::string chart = "cartesian";
  std::string format = "csv";
  std::string output = "-";
  bool oracle = false;
  double tol = 1e-7;
  double oracle_step = 1e-3;
};

int run_trace(const TraceArgs& a, const CLI::App& cmd) {
  const auto kind = parse_kind(a.kind);
  if (!kind) throw InputError("--class must be 'timelike' or 'isotropic'");
  const auto chart = parse_chart(a.chart);
  if (!chart) throw InputError("--chart must be cartesian, cylindrical or kundt");
  const auto format = parse_format(a.format);
  if (!format) throw InputError("--format must be csv or json");
  if (!(a.tol > 0.0)) throw InputError("--tol must be positive");

  Json config;
  GeodesicParamsd p;
  if (!a.psi.empty()) {
    if (cmd.count("--phi0") + cmd.count("--phi3") + cmd.count("--t0") > 0) {
      throw InputError("--psi cannot be combined with --phi0, --phi3 or --t0");
    }
    const Eigen::Vector4d psi = parse_vec4(a.psi, "--psi");
    p = GeodesicParamsd::from_initial(*kind, AdjointStated(psi));
    config["psi"] = {psi[0], psi[1], psi[2], psi[3]};
  } else {
    p = GeodesicParamsd::make(*kind, a.phi0, a.phi3, a.t0);
  }
  GroupElementd base = GroupElementd::Identity();
  if (!a.base.empty()) {
    base = GroupElementd(parse_vec4(a.base, "--base"));
    config["base"] = {base.x0(), base.x1(), base.x2(), base.x3()};
  }
  config["params"] = to_json(p);
  config["t_min"] = a.t_min;
  config["t_max"] = a.t_max;
  config["steps"] = a.steps;
  config["chart"] = a.chart;
  config["format"] = a.format;
  config["oracle"] = a.oracle;
  if (a.oracle) {
    config["tol"] = a.tol;
    config["oracle_step"] = a.oracle_step;
  }

  const SampledCurve curve = sample_curve(p, a.t_min, a.t_max, a.steps, base);
  CurveTable table = table_from_curve(curve);
  if (*chart != Chart::cartesian) table = convert_table(table, *chart);
  const RunManifest manifest = make_manifest("trace", config);

  int code = kOk;
  Json oracle_json;
  CurveTable oracle_table;
  if (a.oracle) {
    IntegratorConfig ic;
    ic.step = a.oracle_step;
    ic.sample_every = 10;
    const double lo = std::min(a.t_min, 0.0);
    const double hi = std::max(a.t_max, 0.0);
    const OracleComparison cmp = compare_to_closed_form(p, ic, lo, hi);
    static const LieAlgebraSpec spec = godel_algebra();
    const Eigen::VectorXd psi0 = adjoint_at(p, 0.0).psi;
    std::vector<TrajectorySample> back = lo < 0.0 ? integrate(spec, psi0, ic, lo) : std::vector<TrajectorySample>{};
    std::vector<TrajectorySample> fwd = hi > 0.0 ? integrate(spec, psi0, ic, hi) : std::vector<TrajectorySample>{};
    std::reverse(back.begin(), back.end());
    if (!back.empty() && !fwd.empty()) back.pop_back();  // t = 0 appears in both
    back.insert(back.end(), fwd.begin(), fwd.end());
    oracle_table.chart = Chart::cartesian;
    for (const auto& s : back) {
      oracle_table.rows.push_back({s.t, compose(base, GroupElementd(Eigen::Vector4d(s.coordinates))).coords(), {}});
    }
    oracle_json["max_deviation"] = cmp.max_deviation;
    oracle_json["per_coordinate"] = {cmp.per_coordinate[0], cmp.per_coordinate[1], cmp.per_coordinate[2],
                                     cmp.per_coordinate[3]};
    oracle_json["worst_t"] = cmp.worst_t;
    oracle_json["tol"] = a.tol;
    std::cerr << "oracle max deviation " << format_number(cmp.max_deviation) << " (tol " << format_number(a.tol)
              << ")\n";
    if (!(cmp.max_deviation <= a.tol)) {
      std::cerr << "error: oracle deviation exceeds --tol\n";
      code = kFailed;
    }
  }

  const bool to_file = !(a.output.empty() || a.output == "-");
  if (*format == Format::csv) {
    write_text(a.output, write_csv(table));
    if (to_file) {
      Json side;
      side["manifest"] = to_json(manifest);
      side["manifest"]["chart"] = a.chart;
      if (a.oracle) side["oracle"] = oracle_json;
      write_text(a.output + ".manifest.json", dump(side));
      if (a.oracle) write_text(a.output + ".oracle.csv", write_csv(oracle_table));
    }
  } else {
    Json j = curve_json(manifest, table);
    if (a.oracle) {
      Json samples = Json::array();
      for (const auto& r : oracle_table.rows) samples.push_back({{"t", r.t}, {"x", {r.q[0], r.q[1], r.q[2], r.q[3]}}});
      oracle_json["samples"] = std::move(samples);
      j["oracle"] = std::move(oracle_json);
    }
    write_text(a.output, dump(j));
  }
  return code;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::optional<double> tol;
  std::vector<int> only;
  std::string json;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  if (a.tol) {
    if (!(*a.tol >= 0.0)) throw InputError("--tol must be non-negative");
    opt.tolerance = a.tol;
  }
  for (int id : a.only) {
    if (id < 1 || id > kCriterionCount) throw InputError("--only takes criterion numbers 1.." + std::to_string(kCriterionCount));
  }
  opt.only = a.only;
  const auto results = run_acceptance(opt);
  std::cout << format_table(results);
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed(); });
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  if (!a.json.empty()) {
    Json config;
    config["tol"] = a.tol ? Json(*a.tol) : Json(nullptr);
    config["only"] = a.only;
    Json j;
    j["manifest"] = to_json(make_manifest("verify", config));
    j["criteria"] = to_json(results);
    write_text(a.json, dump(j));
  }
  return failed == 0 ? kOk : kFailed;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  std::string grid;
  std::string output;
};

int run_sweep(const SweepArgs& a) {
  std::ifstream in(a.grid);
  if (!in) throw InputError("cannot read grid spec '" + a.grid + "'");
  const GridSpec spec = parse_grid_spec(in);
  const std::vector<GeodesicParamsd> grid = expand_grid(spec);
  if (grid.empty()) throw InputError("grid spec expands to no points");

  const BoundReport bounds = bounding_scan(grid, spec.bounds);
  const auto audits = no_closed_geodesic_audit(grid);

  std::error_code ec;
  fs::create_directories(a.output, ec);
  if (ec) throw InputError("cannot create output directory '" + a.output + "': " + ec.message());

  Json points = Json::array();
  std::size_t closed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Json pt;
    pt["index"] = i;
    pt["bounds"] = to_json(bounds.rows[i]);
    pt["audit"] = to_json(audits[i]);
    points.push_back(std::move(pt));
    closed += audits[i].closed ? 1 : 0;
  }

  Json config;
  std::ifstream again(a.grid);
  config["grid"] = Json::parse(again);
  config["grid_file"] = fs::path(a.grid).filename().string();
  Json summary;
  summary["manifest"] = to_json(make_manifest("sweep", config));
  summary["bounds"] = summary_json(bounds);
  summary["audit"] = {{"grid_points", audits.size()},
                      {"closed", closed},
                      {"verdict", closed == 0 ? "no closed geodesic" : "closure found"}};
  write_text((fs::path(a.output) / "points.json").string(), dump(points));
  write_text((fs::path(a.output) / "summary.json").string(), dump(summary));

  std::cout << "grid points      " << grid.size() << "\n";
  std::cout << "sup |x2|         " << format_number(bounds.x2_sup) << "\n";
  std::cout << "x1 range         [" << format_number(bounds.x1_min) << ", " << format_number(bounds.x1_max) << "]\n";
  std::cout << "sharp bounds     " << (bounds.sharp_bounds_hold ? "hold" : "VIOLATED") << "\n";
  std::cout << "F violations     " << bounds.f_violations << "\n";
  std::cout << "x1 outside D     " << bounds.x1_excursions << "\n";
  std::cout << "|x2| > 2+sqrt2   " << bounds.x2_excursions << "\n";
  std::cout << "closure verdict  " << (closed == 0 ? "no closed geodesic" : "closure found") << "\n";
  return bounds.sharp_bounds_hold && closed == 0 ? kOk : kFailed;
}

// convert -------------------------------------------------------------------

struct ConvertArgs {
  std::string input;
  std::string chart;
  std::string format = "csv";
  std::string output = "-";
};

int run_convert(const ConvertArgs& a) {
  const auto chart = parse_chart(a.chart);
  if (!chart) throw InputError("--chart must be cartesian, cylindrical or kundt");
  const auto format = parse_format(a.format);
  if (!format) throw InputError("--format must be csv or json");
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw InputError("cannot read '" + a.input + "'");
  const CurveTable src = read_curve(in);
  CurveTable out = convert_table(src, *chart);
  out.flag_column = true;

  std::size_t flagged = 0;
  for (const auto& r : out.rows) {
    if (r.flag.empty()) continue;
    if (flagged++ < 5) std::cerr << "warning: t = " << format_number(r.t) << ": " << r.flag << "\n";
  }
  if (flagged > 5) std::cerr << "warning: " << flagged << " rows flagged in total\n";

  Json config;
  config["input"] = fs::path(a.input).filename().string();
  config["from"] = std::string(chart_name(src.chart));
  config["to"] = a.chart;
  const RunManifest manifest = make_manifest("convert", config);
  if (*format == Format::csv) {
    write_text(a.output, write_csv(out));
    if (!(a.output.empty() || a.output == "-")) {
      Json side;
      side["manifest"] = to_json(manifest);
      side["manifest"]["chart"] = a.chart;
      write_text(a.output + ".manifest.json", dump(side));
    }
  } else {
    write_text(a.output, dump(curve_json(manifest, out)));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal geodesics of the Goedel group: closed forms, numerical oracle and checks"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  TraceArgs trace;
  auto* t = app.add_subcommand("trace", "Sample a geodesic through the unit (optionally left-translated)");
  t->add_option("--class", trace.kind, "timelike or isotropic")->required();
  t->add_option("--phi0", trace.phi0, "x0 adjoint level (isotropic: 1)");
  t->add_option("--phi3", trace.phi3, "x3 velocity");
  t->add_option("--t0", trace.t0, "phase, radians");
  t->add_option("--psi", trace.psi, "initial covector psi0,psi1,psi2,psi3 (orthonormal frame)");
  t->add_option("--base", trace.base, "left translate by x0,x1,x2,x3");
  t->add_option("--t-min", trace.t_min);
  t->add_option("--t-max", trace.t_max);
  t->add_option("--steps", trace.steps, "number of intervals");
  t->add_option("--chart", trace.chart, "cartesian, cylindrical or kundt");
  t->add_option("--format", trace.format, "csv or json");
  t->add_option("--output,-o", trace.output, "output path, - for stdout");
  t->add_flag("--oracle", trace.oracle, "also integrate numerically and compare");
  t->add_option("--tol", trace.tol, "oracle tolerance");
  t->add_option("--oracle-step", trace.oracle_step, "RK4 step");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the acceptance checks and print a pass/fail table");
  v->add_option("--tol", verify.tol, "replace every residual tolerance");
  v->add_option("--only", verify.only, "criterion numbers to run")->delimiter(',');
  v->add_option("--json", verify.json, "also write a JSON report");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Bounding scan and closure audit over a parameter grid");
  s->add_option("--grid", sweep.grid, "grid spec (JSON)")->required();
  s->add_option("--output,-o", sweep.output, "output directory")->required();

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Re-express a sampled curve in another chart");
  c->add_option("--input,-i", convert.input, "CSV or JSON curve")->required();
  c->add_option("--chart", convert.chart, "target chart")->required();
  c->add_option("--format", convert.format, "csv or json");
  c->add_option("--output,-o", convert.output, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (t->parsed()) return run_trace(trace, *t);
    if (v->parsed()) return run_verify(verify);
    if (s->parsed()) return run_sweep(sweep);
    if (c->parsed()) return run_convert(convert);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
