#include <gtest/gtest.h>

#include <sstream>

#include "mobius/arith.hpp"
#include "mobius/errors.hpp"
#include "mobius/pipeline.hpp"
#include "mobius/report.hpp"

using namespace mobius;

TEST(Pipeline, DegreeOneAtN16) {
  const auto r = pipeline::run(arith::sieve(16), 1);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.stages.size(), 5u);
  EXPECT_EQ(r.stages.front().name, "walsh-decay");
  EXPECT_EQ(r.stages.back().name, "dyadic-scan");
  EXPECT_EQ(r.katai.theta.size(), 1u);
  EXPECT_GE(r.katai.value_abs, r.katai.bound);
  EXPECT_TRUE(r.gap.error_bound_holds);
  // theta is itself dyadic, so it never beats the scan at its own level
  EXPECT_LE(r.katai.value_abs, r.theta_scan_max * (1 + 1e-12));
}

TEST(Pipeline, DegreeTwoReportsHypothesis) {
  const auto r = pipeline::run(arith::sieve(16), 2);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.katai.theta.size(), 2u);
  // 2^{16/4} = 16 > 4 Q^2 needs Q = 1
  EXPECT_EQ(r.hypothesis, r.q_bound < 2);
  EXPECT_EQ(r.lemma.has_value(), r.hypothesis);
}

TEST(Pipeline, Preconditions) {
  EXPECT_THROW(pipeline::run(arith::sieve(21), 1), PreconditionError);
  EXPECT_THROW(pipeline::run(arith::sieve(10), 3), PreconditionError);
  EXPECT_THROW(pipeline::run(arith::sieve(10), 0), PreconditionError);
}

TEST(Report, CsvAndJson) {
  Table t("demo", {"a", "b", "c"});
  t.add(1, std::string("x,y"), 0.5);
  t.add(-2, "plain", true);
  std::ostringstream os;
  t.write_csv(os);
  EXPECT_EQ(os.str(), "# schema demo/1\na,b,c\n1,\"x,y\",0.5\n-2,plain,true\n");
  const auto j = t.to_json();
  EXPECT_EQ(j["schema"], "demo");
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_THROW(t.add(1, 2), std::invalid_argument);
}
