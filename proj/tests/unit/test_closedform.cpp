#include <gtest/gtest.h>

#include "bocorr/closedform.hpp"
#include "bocorr/errors.hpp"

using namespace bocorr;

namespace {

Rational R(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

const Param kT1(R(2, 3));
const Param kT2(R(3, 5));
const Param kX(R(2, 5));
const Param kY(R(3, 7));

}  // namespace

TEST(ClosedFormTest, OnePointLowCoefficients) {
  // beta = s/(1 - s^2) = 6/5 at s = 2/3; q^1 carries beta - 1/beta.
  const Series s = one_point_minus1(kT1, HalfInt(2));
  EXPECT_EQ(s.coeff_q(HalfInt(0)), R(6, 5));
  EXPECT_EQ(s.coeff_q(HalfInt(1)), R(6, 5) - R(5, 6));
}

TEST(ClosedFormTest, OnePointIsTheChargeZeroSector) {
  const std::vector<Param> pts{kT2};
  EXPECT_EQ(a_sector(0, pts, HalfInt(8)), one_point_minus1(kT2, HalfInt(8)));
}

TEST(ClosedFormTest, DegenerateParameterIsRejected) {
  EXPECT_THROW(one_point_minus1(Param(R(1)), HalfInt(4)), DegenerateParameter);
  EXPECT_THROW(c_term(Param(R(-1)), HalfInt(4)), DegenerateParameter);
}

TEST(ClosedFormTest, QdimLevelMinusOneFirstCoefficients) {
  const Series s = qdim_a_minus1(0, HalfInt(3));
  const std::vector<Rational> first{R(1), R(1), R(3), R(6)};
  for (int k = 0; k < 4; ++k) EXPECT_EQ(s.coeff_q(HalfInt(k)), first[k]) << k;
  EXPECT_EQ(qdim_a_minus1(2, HalfInt(8)), qdim_a_minus1(-2, HalfInt(8)));
}

TEST(ClosedFormTest, LevelOneSectorsShiftTheChargeZeroSector) {
  const std::vector<Param> pts{kT1};
  const Series f = f_bo(pts, HalfInt(8));
  EXPECT_EQ(level1_sector(0, pts, HalfInt(8)), f);
  // q^(k^2/2) t^k with t = s^2 = 4/9, k = 2.
  EXPECT_EQ(level1_sector(2, pts, HalfInt(8)), f.times(Term{R(16, 81), Monomial{HalfInt(2), {}}}).truncate(HalfInt(8)));
}

TEST(ClosedFormTest, GeneralizedOnePointMatchesTrace) {
  const std::vector<Param> pts{kT2};
  EXPECT_EQ(generalized_one_point(kX, kY, kT2, HalfInt(6)), a_generalized_trace(kX, kY, pts, HalfInt(6)));
}

TEST(ClosedFormTest, TwoPointFormsDifferInTheCrossTerm) {
  const Series paired = generalized_two_point(kX, kY, kT1, kT2, HalfInt(4), TwoPointForm::paired);
  const Series printed = generalized_two_point(kX, kY, kT1, kT2, HalfInt(4), TwoPointForm::printed);
  const std::vector<Param> pts{kT1, kT2};
  EXPECT_EQ(paired, a_generalized_trace(kX, kY, pts, HalfInt(4)));
  EXPECT_NE(printed, paired);
}

TEST(ClosedFormTest, COnePointHalfLowestTerm) {
  const Series s = c_one_point_half(kT1, HalfInt(4));
  const std::vector<Param> pts{kT1};
  EXPECT_EQ(s, neutral_trace(FockKind::boson_neutral, pts, HalfInt(4)));
  EXPECT_EQ(c_one_point_half(kT1.inverse(), HalfInt(4)), -s);
}

TEST(ClosedFormTest, QDifferenceResiduals) {
  const std::vector<Param> one{kT1};
  EXPECT_TRUE(qdiff_residual(Algebra::c, one, HalfInt(6)).is_zero());
  EXPECT_TRUE(qdiff_residual(Algebra::a, one, HalfInt(6), QdiffForm::shifted).is_zero());
  // The displayed a_inf equation leaves beta at q^0.
  const Series printed = qdiff_residual(Algebra::a, one, HalfInt(6), QdiffForm::printed);
  EXPECT_EQ(printed.coeff_q(HalfInt(0)), R(6, 5));
}

TEST(ClosedFormTest, QdimFormsAgree) {
  for (const std::vector<int>& lam : std::vector<std::vector<int>>{{0}, {2}, {1, 1}})
    EXPECT_EQ(qdim_closed(Algebra::c, HalfInt::from_twice(3), lam, HalfInt(10), QdimForm::weyl_sum),
              qdim_closed(Algebra::c, HalfInt::from_twice(3), lam, HalfInt(10), QdimForm::product));
}

TEST(ClosedFormTest, DualityInstances) {
  const DualityInstance a2 = duality_instance(Algebra::a, HalfInt(-2));
  EXPECT_EQ(a2.name(), "a[-2]");
  EXPECT_EQ(a2.rank, 2);
  EXPECT_FALSE(a2.has_neutral());
  const DualityInstance d = duality_instance(Algebra::d, -HalfInt::from_twice(3));
  EXPECT_TRUE(d.has_neutral());
  EXPECT_EQ(normalize_label(a2, {1}), (std::vector<int>{1, 0}));
  EXPECT_THROW(normalize_label(a2, {1, 2}), InvalidArgument);
  EXPECT_THROW(normalize_label(a2, {1, 0, 0}), InvalidArgument);
  EXPECT_THROW(duality_instance(Algebra::a, HalfInt(1)), InvalidArgument);
}

TEST(ClosedFormTest, ReductionModesAtTheHandCase) {
  const DualityInstance inst = duality_instance(Algebra::a, HalfInt(-2));
  const std::vector<Param> pts{kT1};
  EXPECT_EQ(duality_reduce(inst, {0, 0}, pts, HalfInt(0), ReductionMode::assignment).coeff_q(HalfInt(0)), R(12, 5));
  EXPECT_EQ(duality_reduce(inst, {0, 0}, pts, HalfInt(0), ReductionMode::literal).coeff_q(HalfInt(0)), R(36, 25));
  EXPECT_EQ(duality_reduce(inst, {1, 0}, {}, HalfInt(6), ReductionMode::literal),
            duality_reduce(inst, {1, 0}, {}, HalfInt(6), ReductionMode::assignment));
}

TEST(ClosedFormTest, MultiVariableCoefficient) {
  Series s(HalfInt(2));
  ZExp z = ZExp::var(1, 2) + ZExp::var(2, -1);
  s.add(Monomial{HalfInt(1), z}, R(7));
  s.add(Monomial{HalfInt(1), ZExp::var(1, 2)}, R(3));
  EXPECT_EQ(coeff_zvec(s, {2, -1}).coeff_q(HalfInt(1)), R(7));
  EXPECT_EQ(coeff_zvec(s, {2, 0}).coeff_q(HalfInt(1)), R(3));
}
