#ifndef GODEL_IO_HPP
#define GODEL_IO_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "godel/analysis.hpp"
#include "godel/extremal.hpp"
#include "godel/metric.hpp"

namespace godel {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Format { csv, json };
std::string_view format_name(Format f);
std::optional<Format> parse_format(std::string_view name);

/// %.17g
std::string format_number(double v);

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::string version{kToolVersion};
  std::string timestamp;            // ISO 8601 UTC
  std::optional<std::uint64_t> seed;
};

/// Timestamp from SOURCE_DATE_EPOCH when set, otherwise the wall clock.
RunManifest make_manifest(std::string command, Json config);
Json to_json(const RunManifest& m);

Json to_json(const GeodesicParamsd& p);
/// Reads {class, phi0, phi3, t0}; b is recomputed and checked when present.
GeodesicParamsd params_from_json(const Json& j);

/// One sampled point in some chart. A non-empty flag marks a row whose
/// coordinates could not be produced (the values are then NaN).
struct CurveRow {
  double t = 0.0;
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  std::string flag;
};

struct CurveTable {
  Chart chart = Chart::cartesian;
  std::vector<CurveRow> rows;
  bool flag_column = false;
  std::optional<GeodesicParamsd> params;
};

/// Column names after the leading "t" for each chart.
std::vector<std::string> chart_columns(Chart c);
std::string csv_header(Chart c, bool flag_column);

CurveTable table_from_curve(const SampledCurve& curve);

/// Re-expresses every row in the target chart; rows outside the target
/// domain are flagged instead of aborting.
CurveTable convert_table(const CurveTable& in, Chart target);

std::string write_csv(const CurveTable& table);
/// Chart from the header. Throws DomainError on malformed input.
CurveTable read_csv(std::istream& in);

Json curve_json(const RunManifest& manifest, const CurveTable& table);
CurveTable read_curve_json(const Json& j);

/// Dispatches on the first non-space character ('{' means JSON).
CurveTable read_curve(std::istream& in);

/// Grid spec record (JSON):
///   {"class": ["isotropic", "timelike"],
///    "phi0": [..] or {"min", "max", "count", "endpoint"},
///    "phi3": [..] | "phi3_fraction": [..],
///    "t0": [..] | "t0_fraction": [..],
///    "samples_per_period": 2000, "periods": 2}
/// Any list may be given as a range object. Throws DomainError when malformed
/// or when it expands to no points.
GridSpec parse_grid_spec(const Json& j);
GridSpec parse_grid_spec(std::istream& in);

Json to_json(const PeriodDriftReport& r);
Json to_json(const BoundRow& r);
Json to_json(const Excursion& e);
/// Aggregate fields only (rows are serialized separately).
Json summary_json(const BoundReport& r);

}  // namespace godel

#endif  // GODEL_IO_HPP
