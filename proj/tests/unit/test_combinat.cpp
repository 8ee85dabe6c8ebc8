#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bocorr/combinat.hpp"
#include "bocorr/errors.hpp"

using namespace bocorr;

TEST(PartitionTest, CountsMatchKnownValues) {
  const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (std::size_t n = 0; n < p.size(); ++n) EXPECT_EQ(partitions_of(static_cast<int>(n)).size(), p[n]) << n;
  std::size_t total = 0;
  for (int n = 0; n <= 12; ++n) total += p[n];
  EXPECT_EQ(partitions_up_to(12).size(), total);
}

TEST(PartitionTest, PartitionsAreWeaklyDecreasingAndDistinct) {
  const auto all = partitions_up_to(10);
  std::set<Partition> seen(all.begin(), all.end());
  EXPECT_EQ(seen.size(), all.size());
  for (const Partition& p : all) {
    EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
    for (int part : p) EXPECT_GT(part, 0);
  }
}

TEST(PartitionTest, StrictCounts) {
  const std::vector<std::size_t> q{1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10};
  std::size_t total = 0;
  for (std::size_t n = 0; n < q.size(); ++n) total += q[n];
  EXPECT_EQ(strict_partitions_up_to(10).size(), total);
}

TEST(PartitionTest, FixedLength) {
  const auto two = partitions_with_length(4, 2);
  EXPECT_EQ(std::set<Partition>(two.begin(), two.end()), (std::set<Partition>{{1, 1}, {2, 1}, {3, 1}, {2, 2}}));
  for (const Partition& p : partitions_up_to(9, 3)) EXPECT_LE(p.size(), 3u);
}

TEST(PartitionTest, GeneralizedPartitions) {
  // Weakly decreasing pairs in [-2, 4]: C(7+1, 2) = 28.
  EXPECT_EQ(generalized_partitions(2, -2, 4).size(), 28u);
  for (const GenPartition& g : generalized_partitions(3, -1, 1)) EXPECT_TRUE(std::is_sorted(g.rbegin(), g.rend()));
}

TEST(PartitionTest, EnergyEnumerationIsComplete) {
  // Each part p contributes p - 1/2.
  std::size_t count = 0;
  for_each_by_energy(HalfInt(3), false, [&](const Partition& p) {
    EXPECT_LE(energy(p), HalfInt(3));
    ++count;
  });
  // Energy <= 3 forces at most six parts and weight <= 6.
  std::size_t brute = 0;
  for (const Partition& p : partitions_up_to(12))
    if (energy(p) <= HalfInt(3)) ++brute;
  EXPECT_EQ(count, brute);
}

TEST(WeylTest, GroupOrders) {
  std::size_t fact = 1;
  for (int l = 1; l <= 5; ++l) {
    fact *= l;
    EXPECT_EQ(weyl_group(WeylType::A, l).size(), fact);
    EXPECT_EQ(weyl_group(WeylType::B, l).size(), fact << l);
    EXPECT_EQ(weyl_group(WeylType::C, l).size(), fact << l);
    EXPECT_EQ(weyl_group(WeylType::D, l).size(), fact << (l - 1));
    EXPECT_EQ(weyl_order(WeylType::D, l), fact << (l - 1));
  }
  EXPECT_THROW(weyl_group(WeylType::A, kWeylRankCap + 1), CapExceeded);
}

TEST(WeylTest, SignsAreDeterminants) {
  for (WeylType type : {WeylType::A, WeylType::B, WeylType::D}) {
    int total = 0;
    for (const WeylElement& w : weyl_group(type, 3)) {
      int inversions = 0;
      for (std::size_t i = 0; i < w.perm.size(); ++i)
        for (std::size_t j = i + 1; j < w.perm.size(); ++j)
          if (w.perm[i] > w.perm[j]) ++inversions;
      int det = inversions % 2 ? -1 : 1;
      for (int s : w.signs) det *= s;
      EXPECT_EQ(w.sign, det);
      total += w.sign;
    }
    EXPECT_EQ(total, 0);
  }
}

TEST(WeylTest, KVectorOfIdentityIsLambda) {
  const auto rho = weyl_rho(WeylType::C, 3);
  const std::vector<int> lam{2, 1, 0};
  bool found = false;
  for (const WeylElement& w : weyl_group(WeylType::C, 3)) {
    if (apply(w, rho) == rho) {
      EXPECT_EQ(k_vector(lam, w, rho), lam);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(WeylTest, RhoVectors) {
  EXPECT_EQ(weyl_rho(WeylType::A, 3), (std::vector<HalfInt>{2, 1, 0}));
  EXPECT_EQ(weyl_rho(WeylType::C, 2), (std::vector<HalfInt>{2, 1}));
  EXPECT_EQ(weyl_rho(WeylType::B, 2), (std::vector<HalfInt>{HalfInt::from_twice(3), HalfInt::half()}));
}

TEST(CharacterTest, TrivialNumeratorIsDenominator) {
  EXPECT_EQ(char_numerator(CharKind::gl, {0, 0, 0}, 3), weyl_denominator(WeylType::A, 3));
  EXPECT_EQ(char_numerator(CharKind::sp, {0, 0}, 2), weyl_denominator(WeylType::C, 2));
}

TEST(AlgebraTest, ParseNames) {
  EXPECT_EQ(parse_algebra("a"), Algebra::a);
  EXPECT_EQ(parse_algebra("c_inf"), Algebra::c);
  EXPECT_EQ(algebra_name(Algebra::d), "d");
  EXPECT_THROW(parse_algebra("b"), InvalidArgument);
  EXPECT_THROW(parse_algebra("e8"), InvalidArgument);
}

TEST(AlgebraTest, WeightLabelCoefficientsSumToLevel) {
  for (const auto& lam : std::vector<std::vector<int>>{{0, 0}, {2, 0}, {3, -1}, {0, -2}}) {
    const WeightLabel w = highest_weight_label(Algebra::a, HalfInt(-2), lam);
    HalfInt total(0);
    for (const auto& [idx, c] : w.terms) total += c;
    EXPECT_EQ(total, HalfInt(-2)) << w.str();
    EXPECT_TRUE(w.warning.empty());
  }
  // With every entry positive the displayed formula has level lambda_l - l.
  const WeightLabel pos = highest_weight_label(Algebra::a, HalfInt(-2), {2, 1});
  HalfInt total(0);
  for (const auto& [idx, c] : pos.terms) total += c;
  EXPECT_EQ(total, HalfInt(-1));
  EXPECT_FALSE(pos.warning.empty());
}
