#include <gtest/gtest.h>

#include "stewart/checks.hpp"

using namespace stewart;

TEST(Checks, Ids) {
  EXPECT_EQ(check_ids().size(), 10u);
  EXPECT_THROW(run_check("nosuch"), std::invalid_argument);
}

TEST(Checks, EachPassesAtSmallBounds) {
  for (const auto& id : check_ids()) {
    CheckOptions o;
    o.len = id == "thm3" ? 2 : id == "automatic" ? 2 : 3;
    if (id == "critexp") o.len = 4;
    const CheckReport r = run_check(id, o);
    EXPECT_TRUE(r.passed) << r.text();
    EXPECT_GT(r.cases, 0u) << id;
    EXPECT_FALSE(r.witness) << id;
  }
}

TEST(Checks, VacuousAtLengthZero) {
  CheckOptions o;
  o.len = 0;
  const CheckReport r = run_check("cubes", o);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.text().rfind("check cubes: PASS", 0), 0u);
}

TEST(Checks, SampledLengthsReportTheSeed) {
  CheckOptions o;
  o.len = 6;
  o.samples = 30;
  o.seed = 99;
  const CheckReport r = run_check("cubes", o);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.sampled);
  EXPECT_EQ(r.seed, 99u);
  EXPECT_NE(r.text().find("seed 99"), std::string::npos);
  const CheckReport again = run_check("cubes", o);
  EXPECT_EQ(again.text(), r.text());
}

TEST(Checks, JsonReport) {
  CheckOptions o;
  o.len = 4;
  const nlohmann::json j = run_check("palindromes", o).json();
  EXPECT_EQ(j.at("check"), "palindromes");
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_TRUE(j.at("details").is_array());
}
