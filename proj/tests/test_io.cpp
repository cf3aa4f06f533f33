#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "godel/io.hpp"

using namespace godel;

namespace {

SampledCurve iso_curve(int steps = 50) {
  return sample_curve(GeodesicParamsd::make(GeodesicKind::isotropic, 1.0, 0.3, 0.5), 0.0, 2 * std::numbers::pi,
                      steps);
}

}  // namespace

TEST(Io, FormatNumberRoundTrips) {
  for (double v : {0.1, std::numbers::pi, -1e-300, 1.0 / 3.0, 12345.678}) {
    EXPECT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(parse_format("json"), Format::json);
  EXPECT_FALSE(parse_format("xml"));
}

TEST(Io, CsvHeader) {
  EXPECT_EQ(csv_header(Chart::cartesian, false), "t,x0,x1,x2,x3");
  EXPECT_EQ(csv_header(Chart::cylindrical, true), "t,time,r,phi,x3,flag");
  EXPECT_EQ(chart_columns(Chart::kundt).size(), 4u);
}

TEST(Io, CsvRoundTripIsLossless) {
  const CurveTable t = table_from_curve(iso_curve());
  std::istringstream in(write_csv(t));
  const CurveTable back = read_csv(in);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  EXPECT_EQ(back.chart, Chart::cartesian);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].t, t.rows[i].t);
    EXPECT_EQ(back.rows[i].q, t.rows[i].q);
  }
}

TEST(Io, JsonRoundTripIsLossless) {
  const CurveTable t = table_from_curve(iso_curve());
  const Json j = curve_json(make_manifest("trace", Json::object()), t);
  std::istringstream in(j.dump());
  const CurveTable back = read_curve(in);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  ASSERT_TRUE(back.params);
  EXPECT_EQ(back.params->phi3(), 0.3);
  for (std::size_t i = 0; i < t.rows.size(); ++i) EXPECT_EQ(back.rows[i].q, t.rows[i].q);
}

TEST(Io, ReadCsvRejectsMalformed) {
  for (const char* bad : {"t,a,b,c,d\n0,1,2,3,4\n", "t,x0,x1,x2,x3\n0,1,2,3\n", "t,x0,x1,x2,x3\n1,0,0,0,0\n0,0,0,0,0\n",
                          "t,x0,x1,x2,x3\n0,nan,0,0,0\n", "t,x0,x1,x2,x3\n0,abc,0,0,0\n", ""}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_csv(in), DomainError) << bad;
  }
}

TEST(Io, ConvertAxisPoints) {
  CurveTable t;
  t.rows.push_back({0.0, Eigen::Vector4d(1.4, 0.0, 0.0, 0.2), ""});
  const CurveTable c = convert_table(t, Chart::cylindrical);
  EXPECT_TRUE(c.flag_column);
  EXPECT_EQ(c.rows[0].q[1], 0.0);
  EXPECT_DOUBLE_EQ(c.rows[0].q[0], 0.7);
  EXPECT_EQ(c.rows[0].q[3], 0.2);
}

TEST(Io, ConvertKundt) {
  CurveTable t;
  t.rows.push_back({0.0, Eigen::Vector4d(0.3, 0.7, -1.1, 2.0), ""});
  const CurveTable k = convert_table(t, Chart::kundt);
  EXPECT_DOUBLE_EQ(k.rows[0].q[2], std::exp(-0.7));
  EXPECT_DOUBLE_EQ(k.rows[0].q[1], -1.1 / std::numbers::sqrt2);
}

TEST(Io, ConvertRoundTrip) {
  const CurveTable t = table_from_curve(iso_curve(200));
  for (Chart c : {Chart::cylindrical, Chart::kundt}) {
    const CurveTable back = convert_table(convert_table(t, c), Chart::cartesian);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (!back.rows[i].flag.empty()) continue;
      EXPECT_LT((back.rows[i].q - t.rows[i].q).cwiseAbs().maxCoeff(), 1e-10) << chart_name(c) << " row " << i;
    }
  }
}

TEST(Io, ConvertFlagsOutOfDomainRows) {
  CurveTable k;
  k.chart = Chart::kundt;
  k.rows.push_back({0.0, Eigen::Vector4d(0.0, 0.0, -1.0, 0.0), ""});
  k.rows.push_back({1.0, Eigen::Vector4d(0.0, 0.0, 1.0, 0.0), ""});
  const CurveTable c = convert_table(k, Chart::cartesian);
  EXPECT_FALSE(c.rows[0].flag.empty());
  EXPECT_TRUE(std::isnan(c.rows[0].q[0]));
  EXPECT_TRUE(c.rows[1].flag.empty());
  // Flagged rows survive a CSV round trip.
  std::istringstream in(write_csv(c));
  const CurveTable back = read_csv(in);
  EXPECT_FALSE(back.rows[0].flag.empty());
  EXPECT_TRUE(back.rows[1].flag.empty());
}

TEST(Io, ParamsJson) {
  const auto p = GeodesicParamsd::make(GeodesicKind::timelike, 2.0, 0.5, 1.0);
  const GeodesicParamsd q = params_from_json(to_json(p));
  EXPECT_EQ(q.phi0(), 2.0);
  EXPECT_EQ(q.b(), p.b());
  Json bad = to_json(p);
  bad["b"] = 10.0;
  EXPECT_THROW(params_from_json(bad), DomainError);
}

TEST(Io, GridSpecParse) {
  const Json j = Json::parse(R"({"class": ["timelike"], "phi0": {"min": 1.5, "max": 2.5, "count": 3},
                                  "phi3_fraction": [0, 0.5], "t0": 0, "samples_per_period": 100})");
  const GridSpec g = parse_grid_spec(j);
  EXPECT_EQ(g.phi0.size(), 3u);
  EXPECT_DOUBLE_EQ(g.phi0[2], 2.5);
  EXPECT_TRUE(g.phi3_fraction);
  EXPECT_EQ(g.bounds.samples_per_period, 100);
  EXPECT_EQ(expand_grid(g).size(), 6u);
}

TEST(Io, GridSpecErrors) {
  for (const char* bad : {R"({"class": ["spacelike"]})", R"({"class": "timelike", "colour": 1})",
                          R"({"class": "timelike", "phi0": []})", R"({"class": "timelike", "phi0": 0.5})",
                          R"({"class": "isotropic", "phi3": [0], "phi3_fraction": [0]})", R"([1, 2])"}) {
    EXPECT_THROW(expand_grid(parse_grid_spec(Json::parse(bad))), DomainError) << bad;
  }
  std::istringstream garbage("{not json");
  EXPECT_THROW(parse_grid_spec(garbage), DomainError);
}

TEST(Io, ManifestHonoursSourceDateEpoch) {
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  const RunManifest m = make_manifest("trace", Json{{"k", 1}});
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(m.timestamp, "1970-01-01T00:00:00Z");
  const Json j = to_json(m);
  EXPECT_EQ(j["command"], "trace");
  EXPECT_EQ(j["version"], std::string(kToolVersion));
}
