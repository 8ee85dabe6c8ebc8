#include <gtest/gtest.h>

#include "bocorr/closedform.hpp"
#include "bocorr/fock.hpp"

using namespace bocorr;

namespace {

Rational R(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<Param> points(std::initializer_list<std::pair<long, long>> st) {
  std::vector<Param> out;
  for (auto [n, d] : st) out.emplace_back(R(n, d));
  return out;
}

// Counts pairs of partitions (plus, minus) by energy, charge l(minus) - l(plus).
Series pair_count(int charge, int n) {
  Series s(n);
  const auto all = partitions_up_to(2 * n + 2);
  for (const Partition& a : all) {
    if (energy(a) > HalfInt(n)) continue;
    for (const Partition& b : all) {
      const HalfInt e = energy(a) + energy(b);
      if (e > HalfInt(n) || static_cast<int>(b.size()) - static_cast<int>(a.size()) != charge) continue;
      s.add(Monomial{e, {}}, R(1));
    }
  }
  return s;
}

}  // namespace

TEST(FockTest, SetPartitionsGiveBellNumbers) {
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52};
  for (int n = 0; n < 6; ++n) EXPECT_EQ(set_partitions(n).size(), bell[n]) << n;
  for (const auto& blocks : set_partitions(4)) {
    int covered = 0;
    for (const auto& b : blocks) covered += static_cast<int>(b.size());
    EXPECT_EQ(covered, 4);
  }
}

TEST(FockTest, ChargeConventions) {
  const FactorState s{{2, 1}, {3}};
  EXPECT_EQ(state_charge(FockKind::boson_pair, s), -1);
  EXPECT_EQ(state_charge(FockKind::fermion_pair, s), 1);
  EXPECT_EQ(state_charge(FockKind::boson_neutral, s), 0);
  EXPECT_EQ(state_energy(s), HalfInt(6) - HalfInt::from_twice(3));
}

TEST(FockTest, FactorCentralCharges) {
  EXPECT_EQ(make_factor(FockKind::boson_pair).central, HalfInt(-1));
  EXPECT_EQ(make_factor(FockKind::boson_neutral).central, -HalfInt::half());
  EXPECT_EQ(make_factor(FockKind::fermion_pair).central, HalfInt(1));
  EXPECT_EQ(make_factor(FockKind::fermion_neutral).central, HalfInt::half());
  EXPECT_TRUE(is_charged(FockKind::fermion_pair));
  EXPECT_FALSE(is_charged(FockKind::boson_neutral));
  EXPECT_TRUE(is_fermionic(FockKind::fermion_neutral));
}

TEST(FockTest, SectorDimensionsCountPartitionPairs) {
  for (int m : {-2, 0, 1, 3}) EXPECT_EQ(a_sector_trace(m, {}, HalfInt(6)), pair_count(m, 6)) << m;
}

TEST(FockTest, VacuumOnePointIsCentralTerm) {
  // Only the vacuum has energy 0 in the charge-0 sector.
  const Series one = a_sector_trace(0, points({{2, 3}}), HalfInt(0));
  EXPECT_EQ(one.coeff_q(HalfInt(0)), R(6, 5));
}

TEST(FockTest, ChargedFermionDimensions) {
  // tr z^charge q^L0 over F^1: sum_k z^k q^(k^2/2) / (q)_inf.
  const HalfInt n(8);
  const Series s = f1_charged_trace(Param::z_var(1), {}, n);
  const Series inv = invert_unit(euler(n));
  for (int k = -3; k <= 3; ++k)
    EXPECT_EQ(s.coeff_z(1, k), inv.times(Term{R(1), Monomial{HalfInt::from_twice(k * k), {}}}).truncate(n)) << k;
}

TEST(FockTest, NeutralFermionDimension) {
  // (-q^(1/2); q)_inf
  const HalfInt n(10);
  const Series expected = pochhammer_inf(Term{R(-1), Monomial{HalfInt::half(), {}}}, n);
  EXPECT_EQ(neutral_trace(FockKind::fermion_neutral, {}, n), expected);
}

TEST(FockTest, ResummedAgreesWithStateSumOnCharge) {
  const auto pts = points({{2, 3}, {3, 5}, {5, 7}});
  EXPECT_EQ(resummed_a_sector(1, pts, HalfInt(5)), a_sector_trace(1, pts, HalfInt(5)));
  EXPECT_EQ(resummed_a_sector(-1, pts, HalfInt(5)), a_sector_trace(-1, pts, HalfInt(5)));
}

TEST(FockTest, TensorTraceMatchesDirectEnumeration) {
  for (auto [alg, level] : std::vector<std::pair<Algebra, HalfInt>>{{Algebra::c, HalfInt(-1)},
                                                                     {Algebra::d, HalfInt(-1)}}) {
    const DualityInstance inst = duality_instance(alg, level);
    const auto pts = points({{2, 3}});
    EXPECT_EQ(duality_trace(inst.factors, inst.op, pts, HalfInt(3)),
              duality_trace_direct(inst.factors, inst.op, pts, HalfInt(3)))
        << inst.name();
  }
}
