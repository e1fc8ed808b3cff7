#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace fpcert;
using namespace fpcert::testing;

TEST(Rational, ParsesIntegerFractionAndDecimal) {
  EXPECT_EQ(parse_rat("3"), Rat(3));
  EXPECT_EQ(parse_rat("2/4"), Rat(1, 2));
  EXPECT_EQ(parse_rat("0.25"), Rat(1, 4));
  EXPECT_EQ(parse_rat(".5"), Rat(1, 2));
  EXPECT_EQ(parse_rat("-1.5"), Rat(-3, 2));
  EXPECT_EQ(parse_rat("0.1"), Rat(1, 10));
}

TEST(Rational, RejectsMalformed) {
  for (auto bad : {"", "a", "1/0", "1.2/3", "1/-2", "--1", "1e5", "/2"}) EXPECT_THROW(parse_rat(bad), ParseError) << bad;
}

TEST(Rational, LowestTerms) {
  Rat r = parse_rat("6/8");
  EXPECT_EQ(r.get_num(), 3);
  EXPECT_EQ(r.get_den(), 4);
  EXPECT_EQ(to_string(r), "3/4");
}

TEST(ExtValue, Compare) {
  EXPECT_LT(ExtValue(q("1/3")), ExtValue(q("1/2")));
  EXPECT_EQ(ExtValue::infinity(), ExtValue::infinity());
  EXPECT_EQ(ExtValue(q("2/4")), ExtValue(q("1/2")));
  EXPECT_LT(ExtValue(1000000), ExtValue::infinity());
}

TEST(ExtValue, Arithmetic) {
  EXPECT_EQ(Rat(0) * ExtValue::infinity(), ExtValue(0));
  EXPECT_TRUE((q("1/2") * ExtValue::infinity()).is_inf());
  EXPECT_TRUE((ExtValue(3) + ExtValue::infinity()).is_inf());
  EXPECT_EQ(ExtValue(q("1/3")) + ExtValue(q("2/3")), ExtValue(1));
}

TEST(ExtValue, Parse) {
  EXPECT_TRUE(parse_ext_value("inf").is_inf());
  EXPECT_EQ(parse_ext_value("3/2"), ExtValue(q("3/2")));
  EXPECT_THROW(parse_ext_value("-1"), ParseError);
}

TEST(ExtNat, SuccessorAbsorbsInfinity) {
  EXPECT_EQ(ExtNat(4).succ(), ExtNat(5));
  EXPECT_TRUE(ExtNat::infinity().succ().is_inf());
  EXPECT_LT(ExtNat(1u << 30), ExtNat::infinity());
  EXPECT_TRUE(parse_ext_nat("inf").is_inf());
  EXPECT_EQ(parse_ext_nat("17"), ExtNat(17));
  EXPECT_THROW(parse_ext_nat("1/2"), ParseError);
}
