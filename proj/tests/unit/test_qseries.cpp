#include <gtest/gtest.h>

#include "bocorr/errors.hpp"
#include "bocorr/qseries.hpp"
#include "bocorr/series.hpp"

using namespace bocorr;

namespace {

Rational R(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Pentagonal number theorem, written out independently of the product code.
Series pentagonal(int n) {
  Series s(n);
  for (long k = -20; k <= 20; ++k) {
    const long e = k * (3 * k - 1) / 2;
    if (e <= n) s.add(Monomial{HalfInt(e), {}}, R(k % 2 == 0 ? 1 : -1));
  }
  return s;
}

}  // namespace

TEST(HalfIntTest, ParseAndPrintRoundTrip) {
  for (const char* text : {"0", "7", "-3", "1/2", "-5/2"}) EXPECT_EQ(HalfInt::parse(text).str(), text);
  EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
  EXPECT_THROW(HalfInt::parse("1/3"), ParseError);
  EXPECT_THROW(HalfInt::parse("x"), ParseError);
}

TEST(HalfIntTest, MultiplicationStaysInHalfIntegers) {
  HalfInt out;
  EXPECT_TRUE(try_mul(HalfInt(3), HalfInt::half(), out));
  EXPECT_EQ(out, HalfInt::from_twice(3));
  EXPECT_FALSE(try_mul(HalfInt::half(), HalfInt::half(), out));
}

TEST(RationalTest, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-2")), "-2");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(SeriesTest, EulerMatchesPentagonalNumbers) { EXPECT_EQ(euler(HalfInt(30)), pentagonal(30)); }

TEST(SeriesTest, TruncationCoherenceOfProducts) {
  const Series a = theta(Param(R(2, 3)), HalfInt(12));
  const Series b = pochhammer_inf(Param(R(3, 5), HalfInt::half()), HalfInt(12));
  for (int m : {0, 3, 7, 12}) EXPECT_EQ((a * b).truncate(HalfInt(m)), a.truncate(HalfInt(m)) * b.truncate(HalfInt(m)));
}

TEST(SeriesTest, TruncateNeverRaisesTheTruncation) {
  const Series a = euler(HalfInt(5));
  EXPECT_EQ(a.truncate(HalfInt(9)).truncation(), HalfInt(5));
}

TEST(SeriesTest, InvertRoundTrip) {
  const Series unit = pochhammer_inf(Param(R(5, 7), HalfInt(1)), HalfInt(15));
  const Series one = Series::constant(R(1), HalfInt(15));
  EXPECT_EQ(unit * invert_unit(unit), one);

  // Lowest layer q^(1/2) z: the inverse loses twice the valuation.
  const Series shifted = unit.times(Term{R(3), Monomial{HalfInt::half(), ZExp::var(1)}});
  const Series inv = invert(shifted);
  EXPECT_EQ(inv.truncation(), shifted.truncation() - HalfInt(1));
  EXPECT_EQ((shifted * inv).truncate(HalfInt(14)), one.truncate(HalfInt(14)));
}

TEST(SeriesTest, InvertRejectsDegenerateInput) {
  EXPECT_THROW(invert_unit(Series(HalfInt(4))), DegenerateParameter);
  Series two_terms(HalfInt(4));
  two_terms.add(Monomial{HalfInt(0), {}}, R(1));
  two_terms.add(Monomial{HalfInt(0), ZExp::var(1)}, R(1));
  EXPECT_THROW(invert(two_terms), NotInvertible);
}

TEST(SeriesTest, CoefficientExtractionInZ) {
  Series s(HalfInt(3));
  s.add(Monomial{HalfInt(1), ZExp::var(1, 2)}, R(5));
  s.add(Monomial{HalfInt(2), ZExp::var(1, -1)}, R(-1));
  EXPECT_EQ(s.coeff_z(1, 2).coeff_q(HalfInt(1)), R(5));
  EXPECT_EQ(s.coeff_z(1, -1).coeff_q(HalfInt(2)), R(-1));
  EXPECT_TRUE(s.coeff_z(1, 0).is_zero());
  EXPECT_EQ(s.window_z(1, 0, 5).size(), 1u);
}

TEST(ParamTest, ParseValueAndPowers) {
  const Param p = Param::parse("2/3@1/2");
  EXPECT_EQ(p.value().c, R(4, 9));
  EXPECT_EQ(p.value().m.q, HalfInt::half());
  EXPECT_EQ(Param::parse("2/3").inverse().value().c, R(9, 4));
  const Term sq = power(Param(R(2, 3)), HalfInt::half());
  EXPECT_EQ(sq.c, R(2, 3));
  EXPECT_THROW(power(Param(R(1), HalfInt::half()), HalfInt::half()), IllegalPower);
  EXPECT_THROW(Param::parse("2/3@x"), ParseError);
}

TEST(ParamTest, GeometricExpansionDirections) {
  // 1/(1 - 2q): 1 + 2q + 4q^2 + ...
  const Series up = geometric(Term{R(2), Monomial{HalfInt(1), {}}}, HalfInt(3));
  EXPECT_EQ(up.coeff_q(HalfInt(3)), R(8));
  // 1/(1 - q^{-1}) = -q/(1 - q) = -q - q^2 - ...
  const Series down = geometric(Term{R(1), Monomial{HalfInt(-1), {}}}, HalfInt(3));
  EXPECT_EQ(down.coeff_q(HalfInt(0)), R(0));
  EXPECT_EQ(down.coeff_q(HalfInt(3)), R(-1));
  EXPECT_THROW(geometric(Term{R(1), Monomial{HalfInt(0), {}}}, HalfInt(3)), DegenerateParameter);
}

TEST(QSeriesTest, FinitePochhammerByHand) {
  // (t; q)_2 = (1 - t)(1 - tq) with t = 4/9.
  const Series p = pochhammer_n(Param(R(2, 3)), 2, HalfInt(3));
  EXPECT_EQ(p.coeff_q(HalfInt(0)), R(5, 9));
  EXPECT_EQ(p.coeff_q(HalfInt(1)), R(-4, 9) * R(5, 9));
  EXPECT_EQ(p.coeff_q(HalfInt(2)), R(0));
}

TEST(QSeriesTest, QBinomialTheorem) {
  // 1Phi0(a;;z) = (az)_inf/(z)_inf, with z carrying a q-power.
  const Param a(R(2, 3));
  const Param z(R(3, 5), HalfInt(1));
  const std::vector<Param> up{a};
  const Series lhs = qhyper(up, {}, z, HalfInt(12));
  const Series rhs = pochhammer_inf(a * z, HalfInt(12)) * invert_unit(pochhammer_inf(z, HalfInt(12)));
  EXPECT_EQ(lhs, rhs);
}

TEST(QSeriesTest, ThetaIsOddUnderInversion) {
  const Param t(R(3, 5));
  EXPECT_EQ(theta(t.inverse(), HalfInt(10)), -theta(t, HalfInt(10)));
}

TEST(QSeriesTest, ThetaJetMatchesDerivatives) {
  const Param t(R(2, 3));
  const Jet j = theta_jet(t, 3, HalfInt(8));
  Rational fact(1);
  for (int k = 0; k <= 3; ++k) {
    if (k > 0) fact *= k;
    EXPECT_EQ(j.coeffs[k] * fact, theta_derivative(t, k, HalfInt(8))) << "k=" << k;
  }
}

TEST(QSeriesTest, JacobiCubeOfEuler) {
  // (q)_inf^3 = sum_m (-1)^m (2m+1) q^(m(m+1)/2)
  Series expected(HalfInt(20));
  for (long m = 0; m * (m + 1) / 2 <= 20; ++m)
    expected.add(Monomial{HalfInt(m * (m + 1) / 2), {}}, R(m % 2 == 0 ? 2 * m + 1 : -(2 * m + 1)));
  EXPECT_EQ(pow(euler(HalfInt(20)), 3), expected);
}
