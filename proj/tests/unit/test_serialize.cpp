#include <gtest/gtest.h>

#include "bocorr/closedform.hpp"
#include "bocorr/errors.hpp"
#include "bocorr/serialize.hpp"

using namespace bocorr;

namespace {

Series sample() {
  const Series s = generalized_two_point(Param(Rational(2, 5)), Param(Rational(3, 7)), Param(Rational(2, 3)),
                                         Param(Rational(3, 5)), HalfInt(4));
  Series out = s;
  out.add(Monomial{HalfInt::from_twice(3), ZExp::var(1, -2) + ZExp::var(3, 1)}, Rational(-4, 9));
  return out;
}

}  // namespace

TEST(SerializeTest, JsonRoundTrip) {
  const Series s = sample();
  EXPECT_EQ(series_from_json(to_json(s)), s);
  EXPECT_EQ(series_from_json(nlohmann::json::parse(to_json(s).dump())), s);
}

TEST(SerializeTest, JsonLayout) {
  Series s(HalfInt(2));
  s.add(Monomial{HalfInt::from_twice(3), ZExp::var(1, -2)}, Rational(-4, 9));
  s.add(Monomial{HalfInt(0), {}}, Rational(1));
  const nlohmann::json j = to_json(s);
  EXPECT_EQ(j["truncation"], "2");
  ASSERT_EQ(j["terms"].size(), 2u);
  EXPECT_EQ(j["terms"][0]["q"], "0");
  EXPECT_EQ(j["terms"][1]["q"], "3/2");
  EXPECT_EQ(j["terms"][1]["c"], "-4/9");
  EXPECT_EQ(j["terms"][1]["z"]["1"], -2);
}

TEST(SerializeTest, JsonAcceptsDoubledExponent) {
  const nlohmann::json j = {{"truncation", "3"}, {"terms", {{{"q2", 3}, {"c", "5"}}}}};
  EXPECT_EQ(series_from_json(j).coeff_q(HalfInt::from_twice(3)), Rational(5));
}

TEST(SerializeTest, CsvRoundTrip) {
  const Series s = sample();
  const std::string csv = to_csv(s);
  EXPECT_EQ(csv.rfind("# truncation=4\nq_num,z,coeff_num,coeff_den\n", 0), 0u);
  EXPECT_EQ(series_from_csv(csv), s);
}

TEST(SerializeTest, OutputIsDeterministic) {
  EXPECT_EQ(to_json(sample()).dump(), to_json(sample()).dump());
  EXPECT_EQ(to_csv(sample()), to_csv(sample()));
  EXPECT_EQ(to_pretty(sample()), to_pretty(sample()));
}

TEST(SerializeTest, MalformedInputThrows) {
  EXPECT_THROW(series_from_csv("q_num,z\n1,2"), ParseError);
  EXPECT_THROW(series_from_json(nlohmann::json{{"terms", 3}}), ParseError);
  EXPECT_THROW(series_from_json(nlohmann::json{{"truncation", "1"}, {"terms", {{{"q", "1/3"}, {"c", "1"}}}}}),
               ParseError);
}
