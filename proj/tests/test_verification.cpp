#include <gtest/gtest.h>

#include <cmath>

#include "godel/verification.hpp"

using namespace godel;

namespace {

const Measurement* find(const CriterionResult& r, const std::string& needle) {
  for (const auto& m : r.measurements)
    if (m.label.find(needle) != std::string::npos) return &m;
  return nullptr;
}

}  // namespace

TEST(Verification, FastCriteriaPass) {
  for (int id : {3, 6, 9, 10}) {
    const CriterionResult r = run_criterion(id);
    EXPECT_EQ(r.id, id);
    EXPECT_FALSE(r.measurements.empty());
    EXPECT_TRUE(r.passed()) << format_table({r});
  }
}

TEST(Verification, TightToleranceFails) {
  VerifyOptions o;
  o.tolerance = 1e-20;
  EXPECT_FALSE(run_criterion(3, o).passed());
}

TEST(Verification, OnlyFilter) {
  VerifyOptions o;
  o.only = {9, 3};
  const auto rs = run_acceptance(o);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].id, 3);
  EXPECT_EQ(rs[1].id, 9);
  EXPECT_THROW(run_criterion(12), DomainError);
}

TEST(Verification, BoundingCriterionReportsDerivedSupremum) {
  const CriterionResult r = run_criterion(8);
  const Measurement* sup = find(r, "sup|x2|");
  ASSERT_NE(sup, nullptr);
  EXPECT_NEAR(sup->value, 4.0, 1e-6);
  const Measurement* sharp = find(r, "sharp");
  ASSERT_NE(sharp, nullptr);
  EXPECT_TRUE(sharp->passed);
}

TEST(Verification, Formatting) {
  Measurement m{"x", 1e-12, Relation::at_most, 1e-9, 0, 0, true, true};
  EXPECT_NE(format_measurement(m).find("<="), std::string::npos);
  const CriterionResult r = run_criterion(10);
  const Json j = to_json(std::vector<CriterionResult>{r});
  EXPECT_EQ(j[0]["id"], 10);
  EXPECT_EQ(j[0]["passed"], true);
  EXPECT_NE(format_table({r}).find("PASS criterion 10"), std::string::npos);
}
