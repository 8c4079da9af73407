#include <sstream>

#include <gtest/gtest.h>

#include "spt2/report.hpp"

using namespace spt2;

TEST(Report, IntegersAsNumbersOrStrings) {
  EXPECT_EQ(integer_json(Integer(-42)).dump(), "-42");
  EXPECT_EQ(integer_json(Integer("9223372036854775807")).dump(), "9223372036854775807");
  EXPECT_EQ(integer_json(Integer("9223372036854775808")).dump(), "\"9223372036854775808\"");
  EXPECT_EQ(integer_json(Integer("-9223372036854775809")).dump(), "\"-9223372036854775809\"");
}

TEST(Report, FixtureShape) {
  CheckReport pass{"lemma3", true, 300, 0, std::nullopt, std::nullopt, std::nullopt};
  EXPECT_EQ(fixture_json(pass, "pass").dump(),
            R"({"name":"lemma3","status":"pass","order":300,"modulus":0})");
  CheckReport fail{"x", false, 300, 4, 1, Integer(2), Integer(3)};
  EXPECT_EQ(fixture_json(fail, "fail").dump(),
            R"({"name":"x","status":"fail","first_bad_exponent":1,"lhs_coeff":2,"rhs_coeff":3,"order":300,"modulus":4})");
}

TEST(Report, ClaimShape) {
  ClaimReport r{{8, 2, 4, 3}, "", false, 4, {{0, 1}, {2, 3}}};
  EXPECT_EQ(claim_json(r).dump(),
            R"({"claim":{"a":8,"b":2,"M":4},"status":"fail","n_max":3,"witnesses_checked":4,)"
            R"("violations":[{"n":0,"value_mod_M":1},{"n":2,"value_mod_M":3}]})");
  r.label = "neg";
  r.violations.clear();
  r.pass = true;
  EXPECT_EQ(claim_json(r)["label"], "neg");
  EXPECT_EQ(claim_json(r)["violations"].size(), 0u);
}

TEST(Report, ScanHitShape) {
  ScanHit h{{16, 11, 4, 624}, std::make_pair(std::uint64_t{8}, std::uint64_t{3})};
  EXPECT_EQ(scan_hit_json(h).dump(),
            R"({"claim":{"a":16,"b":11,"M":4},"witnesses_checked":625,"subsumed_by":{"a":8,"b":3}})");
}

TEST(Report, TextTableAlignsColumns) {
  TextTable t({"a", "long header"});
  t.add_row({"12345", "x"});
  std::ostringstream out;
  t.render(out);
  EXPECT_EQ(out.str(), "a      long header\n12345  x\n");
}

TEST(Report, TextTableDropsTrailingBlanks) {
  TextTable t({"a", "b"});
  t.add_row({"1", ""});
  std::ostringstream out;
  t.render(out);
  EXPECT_EQ(out.str(), "a  b\n1\n");
}
