#include "godel/io.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iterator>
#include <limits>
#include <sstream>

namespace godel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  const std::string v = trim(s);
  if (v.empty()) throw DomainError("empty numeric field for " + what);
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE) {
    throw DomainError("cannot parse '" + v + "' as a number for " + what);
  }
  return d;
}

double json_number(const Json& j) {
  if (j.is_null()) return kNaN;
  if (!j.is_number()) throw DomainError("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

std::string_view format_name(Format f) { return f == Format::csv ? "csv" : "json"; }

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunManifest make_manifest(std::string command, Json config) {
  RunManifest m;
  m.command = std::move(command);
  m.config = std::move(config);
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  m.timestamp = buf;
  return m;
}

Json to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["config"] = m.config;
  j["version"] = m.version;
  j["timestamp"] = m.timestamp;
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  return j;
}

Json to_json(const GeodesicParamsd& p) {
  Json j;
  j["class"] = std::string(kind_name(p.kind()));
  j["phi0"] = p.phi0();
  j["phi3"] = p.phi3();
  j["b"] = p.b();
  j["t0"] = p.t0();
  return j;
}

GeodesicParamsd params_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("params must be an object");
  const auto kind = parse_kind(j.value("class", std::string{}));
  if (!kind) throw DomainError("params.class must be 'timelike' or 'isotropic'");
  const double phi0 = j.contains("phi0") ? json_number(j["phi0"]) : 1.0;
  const double phi3 = j.contains("phi3") ? json_number(j["phi3"]) : 0.0;
  const double t0 = j.contains("t0") ? json_number(j["t0"]) : 0.0;
  auto p = GeodesicParamsd::make(*kind, phi0, phi3, t0);
  if (j.contains("b") && std::abs(json_number(j["b"]) - p.b()) > 1e-9) {
    throw DomainError("params.b is inconsistent with phi0 and phi3");
  }
  return p;
}

std::vector<std::string> chart_columns(Chart c) {
  switch (c) {
    case Chart::cartesian:
      return {"x0", "x1", "x2", "x3"};
    case Chart::cylindrical:
      return {"time", "r", "phi", "x3"};
    case Chart::kundt:
      return {"time", "x", "y", "z"};
  }
  return {};
}

std::string csv_header(Chart c, bool flag_column) {
  std::string h = "t";
  for (const auto& col : chart_columns(c)) h += "," + col;
  if (flag_column) h += ",flag";
  return h;
}

CurveTable table_from_curve(const SampledCurve& curve) {
  CurveTable t;
  t.params = curve.params;
  t.rows.reserve(curve.t.size());
  for (std::size_t i = 0; i < curve.t.size(); ++i) t.rows.push_back({curve.t[i], curve.x[i].coords(), {}});
  return t;
}

CurveTable convert_table(const CurveTable& in, Chart target) {
  CurveTable out;
  out.chart = target;
  out.params = in.params;
  out.flag_column = in.flag_column || target != Chart::cartesian;
  out.rows.reserve(in.rows.size());
  for (const auto& row : in.rows) {
    CurveRow r{row.t, Eigen::Vector4d::Constant(kNaN), row.flag};
    if (row.flag.empty()) {
      try {
        const Eigen::Vector4d x = to_cartesian(ChartPoint<double>{in.chart, row.q});
        r.q = from_cartesian(x, target).q;
        if (!r.q.allFinite()) throw DomainError("non-finite result");
      } catch (const DomainError& e) {
        r.q.setConstant(kNaN);
        r.flag = e.what();
        out.flag_column = true;
      }
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::string write_csv(const CurveTable& table) {
  std::string s = csv_header(table.chart, table.flag_column);
  s += '\n';
  for (const auto& row : table.rows) {
    s += format_number(row.t);
    for (int k = 0; k < 4; ++k) {
      s += ',';
      s += format_number(row.q[k]);
    }
    if (table.flag_column) {
      std::string flag = row.flag.empty() ? "ok" : row.flag;
      std::replace(flag.begin(), flag.end(), ',', ';');
      s += ',' + flag;
    }
    s += '\n';
  }
  return s;
}

CurveTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: missing header");
  const auto cols = split(trim(line), ',');
  CurveTable t;
  bool matched = false;
  for (Chart c : {Chart::cartesian, Chart::cylindrical, Chart::kundt}) {
    for (bool flag : {false, true}) {
      if (trim(line) == csv_header(c, flag)) {
        t.chart = c;
        t.flag_column = flag;
        matched = true;
      }
    }
  }
  if (!matched) throw DomainError("csv: unrecognized header '" + trim(line) + "'");
  const std::size_t width = t.flag_column ? 6 : 5;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    const std::string where = "csv line " + std::to_string(line_no);
    if (f.size() != width) throw DomainError(where + ": expected " + std::to_string(width) + " fields");
    CurveRow row;
    row.t = parse_double(f[0], where);
    for (int k = 0; k < 4; ++k) row.q[k] = parse_double(f[k + 1], where);
    if (t.flag_column) {
      const std::string flag = trim(f[5]);
      if (flag != "ok" && !flag.empty()) row.flag = flag;
    }
    if (!std::isfinite(row.t)) throw DomainError(where + ": t must be finite");
    if (row.flag.empty() && !row.q.allFinite()) throw DomainError(where + ": unflagged row is not finite");
    if (!t.rows.empty() && !(row.t > t.rows.back().t)) throw DomainError(where + ": t must be strictly increasing");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json curve_json(const RunManifest& manifest, const CurveTable& table) {
  Json j;
  Json m = to_json(manifest);
  m["chart"] = std::string(chart_name(table.chart));
  j["manifest"] = std::move(m);
  j["params"] = table.params ? to_json(*table.params) : Json(nullptr);
  Json samples = Json::array();
  for (const auto& row : table.rows) {
    Json s;
    s["t"] = row.t;
    Json x = Json::array();
    for (int k = 0; k < 4; ++k) x.push_back(std::isfinite(row.q[k]) ? Json(row.q[k]) : Json(nullptr));
    s["x"] = std::move(x);
    if (!row.flag.empty()) s["flag"] = row.flag;
    samples.push_back(std::move(s));
  }
  j["samples"] = std::move(samples);
  return j;
}

CurveTable read_curve_json(const Json& j) {
  if (!j.is_object() || !j.contains("samples") || !j["samples"].is_array()) {
    throw DomainError("json: expected an object with a 'samples' array");
  }
  CurveTable t;
  if (j.contains("manifest") && j["manifest"].contains("chart")) {
    const auto c = parse_chart(j["manifest"]["chart"].get<std::string>());
    if (!c) throw DomainError("json: unknown chart");
    t.chart = *c;
  }
  if (j.contains("params") && !j["params"].is_null()) t.params = params_from_json(j["params"]);
  for (const auto& s : j["samples"]) {
    if (!s.is_object() || !s.contains("t") || !s.contains("x") || !s["x"].is_array() || s["x"].size() != 4) {
      throw DomainError("json: each sample needs 't' and a 4-element 'x'");
    }
    CurveRow row;
    row.t = json_number(s["t"]);
    for (int k = 0; k < 4; ++k) row.q[k] = json_number(s["x"][k]);
    if (s.contains("flag")) {
      row.flag = s["flag"].get<std::string>();
      t.flag_column = true;
    }
    if (!std::isfinite(row.t)) throw DomainError("json: t must be finite");
    if (row.flag.empty() && !row.q.allFinite()) throw DomainError("json: unflagged sample is not finite");
    if (!t.rows.empty() && !(row.t > t.rows.back().t)) throw DomainError("json: t must be strictly increasing");
    t.rows.push_back(std::move(row));
  }
  return t;
}

CurveTable read_curve(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw DomainError(std::string("json: ") + e.what());
    }
    return read_curve_json(j);
  }
  std::istringstream ss(text);
  return read_csv(ss);
}

namespace {

std::vector<double> number_list(const Json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& e : j) {
      if (!e.is_number()) throw DomainError("grid: '" + key + "' entries must be numbers");
      v.push_back(e.get<double>());
    }
    return v;
  }
  if (j.is_object()) {
    for (const char* k : {"min", "max", "count"}) {
      if (!j.contains(k) || !j[k].is_number()) {
        throw DomainError("grid: range '" + key + "' needs numeric min, max and count");
      }
    }
    const auto count = j["count"].get<long long>();
    if (count < 0) throw DomainError("grid: range '" + key + "' has a negative count");
    const bool endpoint = j.value("endpoint", true);
    return linspace(j["min"].get<double>(), j["max"].get<double>(), static_cast<std::size_t>(count), !endpoint);
  }
  throw DomainError("grid: '" + key + "' must be a number, a list or a range object");
}

}  // namespace

GridSpec parse_grid_spec(const Json& j) {
  if (!j.is_object()) throw DomainError("grid: spec must be a JSON object");
  static const std::vector<std::string> known = {"class", "phi0", "phi3", "phi3_fraction", "t0",
                                                 "t0_fraction", "samples_per_period", "periods"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw DomainError("grid: unknown key '" + key + "'");
    }
  }
  GridSpec g;
  if (!j.contains("class")) throw DomainError("grid: missing 'class'");
  const Json cls = j["class"].is_string() ? Json::array({j["class"]}) : j["class"];
  if (!cls.is_array()) throw DomainError("grid: 'class' must be a string or a list");
  for (const auto& c : cls) {
    const auto k = c.is_string() ? parse_kind(c.get<std::string>()) : std::nullopt;
    if (!k) throw DomainError("grid: class entries must be 'timelike' or 'isotropic'");
    g.kinds.push_back(*k);
  }
  if (j.contains("phi0")) g.phi0 = number_list(j["phi0"], "phi0");
  const bool has_tl = std::find(g.kinds.begin(), g.kinds.end(), GeodesicKind::timelike) != g.kinds.end();
  if (has_tl && g.phi0.empty()) throw DomainError("grid: timelike classes need 'phi0'");
  if (j.contains("phi3") && j.contains("phi3_fraction")) throw DomainError("grid: give 'phi3' or 'phi3_fraction', not both");
  if (j.contains("phi3")) g.phi3 = number_list(j["phi3"], "phi3");
  if (j.contains("phi3_fraction")) {
    g.phi3 = number_list(j["phi3_fraction"], "phi3_fraction");
    g.phi3_fraction = true;
  }
  if (j.contains("t0") && j.contains("t0_fraction")) throw DomainError("grid: give 't0' or 't0_fraction', not both");
  if (j.contains("t0")) g.t0 = number_list(j["t0"], "t0");
  if (j.contains("t0_fraction")) {
    g.t0 = number_list(j["t0_fraction"], "t0_fraction");
    g.t0_fraction = true;
  }
  if (j.contains("samples_per_period")) {
    if (!j["samples_per_period"].is_number_integer() || j["samples_per_period"].get<long long>() < 1) {
      throw DomainError("grid: 'samples_per_period' must be a positive integer");
    }
    g.bounds.samples_per_period = j["samples_per_period"].get<int>();
  }
  if (j.contains("periods")) {
    if (!j["periods"].is_number() || !(j["periods"].get<double>() > 0.0)) {
      throw DomainError("grid: 'periods' must be positive");
    }
    g.bounds.periods = j["periods"].get<double>();
  }
  if (g.kinds.empty() || g.phi3.empty() || g.t0.empty() || (has_tl && g.phi0.empty())) {
    throw DomainError("grid: spec expands to no points");
  }
  return g;
}

GridSpec parse_grid_spec(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError(std::string("grid: ") + e.what());
  }
  return parse_grid_spec(j);
}

Json to_json(const Excursion& e) {
  Json j;
  j["params"] = to_json(e.params);
  j["t"] = e.t;
  j["x"] = {e.x[0], e.x[1], e.x[2], e.x[3]};
  return j;
}

Json to_json(const PeriodDriftReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["line"] = r.line;
  j["period"] = r.period;
  j["drift"] = r.drift;
  j["drift_check"] = r.drift_check;
  j["phi3_slope"] = r.phi3_slope;
  j["return_residual"] = r.return_residual;
  j["min_interior_return"] = r.line ? Json(nullptr) : Json(r.min_interior_return);
  j["spurious_returns"] = r.spurious_returns;
  j["spurious_times"] = r.spurious_times;
  j["reason"] = r.reason;
  j["verdict"] = r.verdict();
  return j;
}

Json to_json(const BoundRow& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["x1_min"] = r.x1_min;
  j["x1_max"] = r.x1_max;
  j["x2_abs_max"] = r.x2_abs_max;
  j["x1_bound"] = r.x1_bound;
  j["x2_bound"] = r.x2_bound;
  j["f_violation"] = r.f_violation ? to_json(*r.f_violation) : Json(nullptr);
  return j;
}

Json summary_json(const BoundReport& r) {
  auto opt = [](const std::optional<Excursion>& e) { return e ? to_json(*e) : Json(nullptr); };
  Json j;
  j["grid_points"] = r.rows.size();
  j["samples"] = r.samples;
  j["x1_min"] = r.rows.empty() ? Json(nullptr) : Json(r.x1_min);
  j["x1_max"] = r.rows.empty() ? Json(nullptr) : Json(r.x1_max);
  j["x2_sup"] = r.x2_sup;
  j["x2_argmax"] = opt(r.x2_argmax);
  j["sharp_bounds"] = {{"x1_box", {r.x1_box_lower, r.x1_box_upper}},
                       {"x2_box", r.x2_box},
                       {"max_violation", r.sharp_violation},
                       {"hold", r.sharp_bounds_hold}};
  j["published"] = {{"x1_interval", {r.published_x1_lower, r.published_x1_upper}},
                    {"x2_bound", r.published_x2},
                    {"x1_excursions", r.x1_excursions},
                    {"first_x1_excursion", opt(r.first_x1_excursion)},
                    {"x2_excursions", r.x2_excursions},
                    {"first_x2_excursion", opt(r.first_x2_excursion)},
                    {"f_violations", r.f_violations},
                    {"first_f_violation", opt(r.first_f_violation)}};
  return j;
}

}  // namespace godel
