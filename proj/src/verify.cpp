#include "bocorr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "bocorr/closedform.hpp"
#include "bocorr/combinat.hpp"
#include "bocorr/errors.hpp"
#include "bocorr/fock.hpp"
#include "bocorr/qseries.hpp"
#include "bocorr/serialize.hpp"

namespace bocorr {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::error: return "error";
  }
  return "error";
}

namespace {

Param P(long num, long den = 1) { return Param(Rational(num, den)); }

std::string label_str(const std::vector<int>& lam) {
  std::string s;
  for (std::size_t i = 0; i < lam.size(); ++i) s += (i ? "," : "") + std::to_string(lam[i]);
  return s;
}

std::string points_str(std::span<const Param> pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + pts[i].str();
  return s;
}

Series constant(const Rational& c, HalfInt n) { return Series::constant(c, n); }

// Exact polynomial in z placed at truncation n.
Series lift(const Series& s, HalfInt n) {
  Series out(n);
  for (const auto& [m, c] : s.terms()) out.add(m, c);
  return out;
}

// c * z_1^a1 * z_2^a2 ...
Series zmono(const Rational& c, const std::vector<int>& exps, HalfInt n) {
  ZExp z;
  for (std::size_t i = 0; i < exps.size(); ++i) z[static_cast<int>(i) + 1] = exps[i];
  return Series::monomial(c, HalfInt(0), n, z);
}

const std::vector<Param> kS{P(2, 3), P(3, 5), P(5, 7)};
const Param kX = P(2, 5);
const Param kY = P(3, 7);

std::vector<Param> first_points(int n) { return std::vector<Param>(kS.begin(), kS.begin() + n); }

// 1/((z_v q^(1/2))_inf (z_v^-1 q^(1/2))_inf)
Series boson_pair_generating(int var, HalfInt n) {
  Term a{Rational(1), Monomial{HalfInt::half(), ZExp::var(var, 1)}};
  Term b{Rational(1), Monomial{HalfInt::half(), ZExp::var(var, -1)}};
  return invert_unit(pochhammer_inf(a, n)) * invert_unit(pochhammer_inf(b, n));
}

struct Registry {
  std::vector<CheckSpec> checks;

  void add(std::string name, std::string topic, std::string params, HalfInt n, std::function<Sides(HalfInt)> f,
           bool gating = true) {
    checks.push_back(CheckSpec{std::move(name), std::move(topic), std::move(params), n, gating, std::move(f)});
  }

  void identities() {
    for (const Param& z : {Param(Rational(1), HalfInt(1)), Param(Rational(2, 3), HalfInt(1))})
      add("exponential-sum-" + z.str(), "exponential", "z=" + z.str(), HalfInt(20),
          [z](HalfInt n) { return Sides{exponential_sum(z, n), exponential_product(z, n)}; });
    const Param z1(Rational(1), HalfInt(1));
    for (const Param& a : {P(2, 3), P(5, 7)})
      add("exponential-binomial-" + a.str(), "exponential", "a=" + a.str() + " z=" + z1.str(), HalfInt(20),
          [a, z1](HalfInt n) { return Sides{binomial_sum(a, z1, n), binomial_product(a, z1, n)}; });

    for (int k : {0, 1, 3})
      for (const Param& t : {P(2, 3), P(5, 7)})
        add("poch-ratio-k" + std::to_string(k) + "-" + t.str(), "poch-ratio",
            "k=" + std::to_string(k) + " t=" + t.str(), HalfInt(20),
            [k, t](HalfInt n) { return Sides{poch_ratio_sum(k, t, n), poch_ratio_closed(k, t, n)}; });

    const std::vector<Term> us{Term{Rational(4, 9), Monomial{HalfInt::half(), {}}},
                               Term{Rational(9, 25), Monomial{HalfInt(1), {}}}};
    const std::vector<std::string> un{"2/3@1/2", "3/5@1"};
    for (std::size_t i = 0; i < us.size(); ++i) {
      const Term u = us[i];
      add("identity-ff-double-" + un[i], "ff-identity", "u=" + un[i], HalfInt(20),
          [u](HalfInt n) { return Sides{ff_lhs(u, n), ff_double_sum(u, n)}; });
      add("identity-ff-bilateral-" + un[i], "ff-expansion", "u=" + un[i], HalfInt(20),
          [u](HalfInt n) { return Sides{ff_lhs(u, n), ff_bilateral(u, n)}; });
    }
    // u = z q^(1/2): the bilateral form is the generating function of the level -1 q-dimensions.
    add("identity-ff-qdim-generating", "qdim-identity", "u=z q^(1/2)", HalfInt(12), [](HalfInt n) {
      Series rhs(n);
      const int kmax = 2 * n.twice() + 2;
      for (int k = -kmax; k <= kmax; ++k) rhs += qdim_a_minus1(k, n) * zmono(Rational(1), {k}, n);
      Term u{Rational(1), Monomial{HalfInt::half(), ZExp::var(1, 1)}};
      return Sides{ff_bilateral(u, n), rhs};
    });

    for (int l = 1; l <= 5; ++l)
      add("length-sum-l" + std::to_string(l), "length-sums", "l=" + std::to_string(l), HalfInt(15),
          [l](HalfInt n) { return Sides{length_sum(l, n), length_sum_closed(l, n)}; });
    for (int l = 1; l <= 4; ++l)
      for (int i = 1; i <= l; ++i)
        add("length-sum-part-l" + std::to_string(l) + "-i" + std::to_string(i), "length-sums",
            "l=" + std::to_string(l) + " i=" + std::to_string(i) + " t=2/3", HalfInt(15), [l, i](HalfInt n) {
              return Sides{part_sum(l, i, P(2, 3), n), part_sum_closed(l, i, P(2, 3), n)};
            });
  }

  void theta_checks() {
    add("theta-jet-triple-product", "theta", "t=1", HalfInt(20), [](HalfInt n) {
      Series rhs(n);
      for (long m = 0; HalfInt(m * (m + 1) / 2) <= n; ++m)
        rhs.add(Monomial{HalfInt(m * (m + 1) / 2), {}}, Rational(m % 2 ? -(2 * m + 1) : 2 * m + 1));
      return Sides{theta_derivative(P(1), 1, n) * pow(euler(n), 3), rhs};
    });
    for (const Param& t : {P(2, 3), P(3, 5)})
      add("theta-triple-product-" + t.str(), "theta", "t=" + t.str(), HalfInt(20), [t](HalfInt n) {
        Series rhs(n);
        for (long m = -2 * n.twice() - 2; m <= 2 * n.twice() + 2; ++m) {
          const long e = m * (m - 1) / 2;
          if (HalfInt(e) > n) continue;
          Term w = power(t, HalfInt(m) - HalfInt::half());
          rhs.add(Monomial{HalfInt(e), {}}, m % 2 ? w.c : -w.c);
        }
        return Sides{theta(t, n) * pow(euler(n), 3), rhs};
      });
    add("theta-fbo-symmetric", "theta", "t=2/3,3/5", HalfInt(8), [](HalfInt n) {
      std::vector<Param> a{P(2, 3), P(3, 5)}, b{P(3, 5), P(2, 3)};
      return Sides{f_bo(a, n), f_bo(b, n)};
    });
    for (int k : {-1, 0, 2})
      for (int np : {1, 2})
        add("level-one-sector-k" + std::to_string(k) + "-n" + std::to_string(np), "level-one-sector",
            "k=" + std::to_string(k) + " t=" + points_str(first_points(np)), HalfInt(8), [k, np](HalfInt n) {
              const auto pts = first_points(np);
              return Sides{level1_sector(k, pts, n), f1_charged_trace(Param::z_var(1), pts, n).coeff_z(1, k)};
            });
  }

  void a_level_minus1() {
    for (const Param& t : kS)
      add("one-point-" + t.str(), "one-point", "t=" + t.str(), HalfInt(12), [t](HalfInt n) {
        std::vector<Param> pts{t};
        return Sides{one_point_minus1(t, n), a_sector_trace(0, pts, n)};
      });
    add("one-point-low-coefficients", "one-point", "t=2/3", HalfInt(1), [](HalfInt n) {
      const Rational b(6, 5);
      Series rhs(n);
      rhs.add(Monomial{}, b);
      rhs.add(Monomial{HalfInt(1), {}}, b - 1 / b);
      return Sides{one_point_minus1(P(2, 3), n), rhs};
    });
    for (const Param& t : {P(2, 3), P(3, 5)})
      add("general-ab-" + t.str(), "general-ab", "x=2/5 y=3/7 t=" + t.str(), HalfInt(10), [t](HalfInt n) {
        std::vector<Param> pts{t};
        return Sides{generalized_one_point(kX, kY, t, n), a_generalized_trace(kX, kY, pts, n)};
      });
    for (const Param& t : {P(2, 3), P(3, 5)})
      add("omega-partition-sum-" + t.str(), "part-sum-generating", "x=2/5 t=" + t.str(), HalfInt(10),
          [t](HalfInt n) { return Sides{omega_numerator(kX, t, n), omega_partition_sum(kX, t, n)}; });
    for (int m : {-1, 0, 2})
      add("residue-one-point-m" + std::to_string(m), "residue-one-point", "m=" + std::to_string(m) + " t=2/3",
          HalfInt(8), [m](HalfInt n) {
            const auto pts = first_points(1);
            return Sides{a_sector(m, pts, n), a_sector_trace(m, pts, n)};
          });

    const std::vector<std::pair<Param, Param>> pairs{{P(2, 3), P(3, 5)}, {P(5, 7), P(2, 3)}};
    for (const auto& [t1, t2] : pairs) {
      const std::string ps = t1.str() + "," + t2.str();
      add("two-point-" + ps, "two-point", "x=2/5 y=3/7 t=" + ps, HalfInt(8), [t1, t2](HalfInt n) {
        std::vector<Param> pts{t1, t2};
        return Sides{generalized_two_point(kX, kY, t1, t2, n), a_generalized_trace(kX, kY, pts, n)};
      });
    }
    add("two-point-printed-cross-term", "two-point", "x=2/5 y=3/7 t=2/3,3/5", HalfInt(8),
        [](HalfInt n) {
          std::vector<Param> pts{P(2, 3), P(3, 5)};
          return Sides{generalized_two_point(kX, kY, P(2, 3), P(3, 5), n, TwoPointForm::printed),
                       a_generalized_trace(kX, kY, pts, n), "cross term as displayed"};
        },
        false);
    add("two-point-symmetric", "two-point", "x=2/5 y=3/7 t=2/3,3/5", HalfInt(8), [](HalfInt n) {
      return Sides{generalized_two_point(kX, kY, P(2, 3), P(3, 5), n),
                   generalized_two_point(kX, kY, P(3, 5), P(2, 3), n)};
    });
    for (int m : {0, 1})
      add("residue-two-point-m" + std::to_string(m), "residue-two-point", "m=" + std::to_string(m) + " t=2/3,3/5",
          HalfInt(8), [m](HalfInt n) {
            const auto pts = first_points(2);
            return Sides{a_sector(m, pts, n), a_sector_trace(m, pts, n)};
          });
  }

  void fock_checks() {
    add("fock-resummed-a-sector-n3", "fock-oracle", "m=0 t=2/3,3/5,5/7", HalfInt(6), [](HalfInt n) {
      const auto pts = first_points(3);
      return Sides{resummed_a_sector(0, pts, n), a_sector_trace(0, pts, n)};
    });
    add("fock-resummed-neutral-boson-n3", "fock-oracle", "t=2/3,3/5,5/7", HalfInt(6), [](HalfInt n) {
      const auto pts = first_points(3);
      return Sides{resummed_neutral(FockKind::boson_neutral, pts, n), neutral_trace(FockKind::boson_neutral, pts, n)};
    });
    add("fock-resummed-neutral-fermion-n2", "neutral-fermion", "t=2/3,3/5", HalfInt(8), [](HalfInt n) {
      const auto pts = first_points(2);
      return Sides{resummed_neutral(FockKind::fermion_neutral, pts, n),
                   neutral_trace(FockKind::fermion_neutral, pts, n)};
    });
    add("fock-duality-trace-direct", "fock-oracle", "a[-2] t=2/3,3/5", HalfInt(3), [](HalfInt n) {
      const DualityInstance inst = duality_instance(Algebra::a, HalfInt(-2));
      const auto pts = first_points(2);
      return Sides{duality_trace(inst.factors, inst.op, pts, n), duality_trace_direct(inst.factors, inst.op, pts, n)};
    });
    // Adding a mode r shifts the C(t) eigenvalue by t^r - t^(-r).
    add("c-commutator-shift", "c-commutator", "t=2/3 p=(3,1)+(2)", HalfInt(4), [](HalfInt n) {
      const FockFactor f = make_factor(FockKind::boson_neutral);
      const Param t = P(2, 3);
      const Series before = eigenvalue(f, FactorState{{3, 1}, {}}, OpTag::C, t, n);
      const Series after = eigenvalue(f, FactorState{{3, 2, 1}, {}}, OpTag::C, t, n);
      const Term up = power(t, HalfInt::from_twice(3)), down = power(t, HalfInt::from_twice(-3));
      return Sides{after - before, constant(up.c - down.c, n)};
    });
  }

  void c_level_half() {
    for (const Param& t : {P(2, 3), P(3, 5)}) {
      add("c-one-point-half-" + t.str(), "c-one-point-half", "t=" + t.str(), HalfInt(10), [t](HalfInt n) {
        std::vector<Param> pts{t};
        return Sides{c_one_point_half(t, n), neutral_trace(FockKind::boson_neutral, pts, n)};
      });
    }
    add("c-one-point-half-antisymmetric", "c-one-point-half", "t=2/3", HalfInt(10), [](HalfInt n) {
      return Sides{c_one_point_half(P(2, 3), n), -c_one_point_half(P(3, 2), n)};
    });
    for (int m : {0, 1, 2})
      for (int np : {1, 2})
        add("c-sector-minus1-m" + std::to_string(m) + "-n" + std::to_string(np), "c-ctoa",
            "m=" + std::to_string(m) + " t=" + points_str(first_points(np)), HalfInt(8), [m, np](HalfInt n) {
              const auto pts = first_points(np);
              return Sides{c_sector_minus1(m, pts, n),
                           factor_trace(make_factor(FockKind::boson_pair), OpTag::C, pts, n).coeff_z(1, m)};
            });
    for (int m : {0, 1})
      add("d-sector-minus1-m" + std::to_string(m), "d-sector", "m=" + std::to_string(m) + " t=2/3", HalfInt(8),
          [m](HalfInt n) {
            const auto pts = first_points(1);
            const DualityInstance inst = duality_instance(Algebra::d, HalfInt(-1));
            return Sides{d_sector_minus1(m, pts, n), duality_extract(inst, {m}, pts, n)};
          });
  }

  void qdiff_checks() {
    for (int np : {1, 2, 3}) {
      const std::string ps = points_str(first_points(np));
      add("qdiff-a-n" + std::to_string(np), "qdiff-a", "t=" + ps, HalfInt(10), [np](HalfInt n) {
        const auto pts = first_points(np);
        return Sides{qdiff_lhs(Algebra::a, pts, n), qdiff_rhs(Algebra::a, pts, n, QdiffForm::printed)};
      });
      add("qdiff-a-shifted-n" + std::to_string(np), "qdiff-a", "t=" + ps, HalfInt(10), [np](HalfInt n) {
        const auto pts = first_points(np);
        return Sides{qdiff_lhs(Algebra::a, pts, n), qdiff_rhs(Algebra::a, pts, n, QdiffForm::shifted),
                     "charge -1 sector, sign (-1)^s"};
      });
      add("qdiff-c-n" + std::to_string(np), "qdiff-c", "t=" + ps, HalfInt(10), [np](HalfInt n) {
        const auto pts = first_points(np);
        return Sides{qdiff_lhs(Algebra::c, pts, n), qdiff_rhs(Algebra::c, pts, n, QdiffForm::printed)};
      });
    }
  }

  void qdim_vs_extract(Algebra alg, HalfInt level, const std::vector<int>& lam, const std::string& topic) {
    const DualityInstance inst = duality_instance(alg, level);
    add("qdim-" + algebra_name(alg) + level.str() + "-lam" + label_str(lam), topic,
        inst.name() + " lambda=" + label_str(lam), HalfInt(10), [alg, level, lam](HalfInt n) {
          const DualityInstance inst = duality_instance(alg, level);
          std::vector<Param> none;
          return Sides{qdim_closed(alg, level, lam, n), duality_extract(inst, lam, none, n)};
        });
  }

  void qdim_checks() {
    for (int k : {0, 1, -2, 3})
      add("qdim-a-1-k" + std::to_string(k), "qdim-level-minus1", "k=" + std::to_string(k), HalfInt(20),
          [k](HalfInt n) {
            std::vector<Param> none;
            return Sides{qdim_a_minus1(k, n), a_sector_trace(k, none, n)};
          });
    add("qdim-a-1-first-coefficients", "qdim-level-minus1", "k=0", HalfInt(3), [](HalfInt n) {
      Series rhs(n);
      const int c[] = {1, 1, 3, 6};
      for (int e = 0; e < 4; ++e) rhs.add(Monomial{HalfInt(e), {}}, Rational(c[e]));
      return Sides{qdim_a_minus1(0, n), rhs};
    });
    add("qdim-identity-l2", "qdim-identity", "l=2", HalfInt(10), [](HalfInt n) {
      const int l = 2;
      Series lhs = boson_pair_generating(1, n) * boson_pair_generating(2, n);
      lhs = lhs * lift(weyl_denominator(WeylType::A, l), n);
      Series rhs(n);
      const int bound = n.twice() + 2;
      for (const GenPartition& lam : generalized_partitions(l, -bound, bound))
        rhs += lift(char_numerator(CharKind::gl, lam, l), n) * qdim_closed(Algebra::a, HalfInt(-l), lam, n);
      return Sides{lhs, rhs};
    });
    for (const auto& lam : std::vector<std::vector<int>>{{0, 0}, {1, -1}, {2, -1}})
      qdim_vs_extract(Algebra::a, HalfInt(-2), lam, "qdim-level-l");
    for (const auto& lam : std::vector<std::vector<int>>{{0, 0, 0}, {1, 0, -2}, {2, 1, -1}})
      qdim_vs_extract(Algebra::a, HalfInt(-3), lam, "qdim-level-l");

    for (const auto& lam : std::vector<std::vector<int>>{{0, 0}, {1, 0}, {2, 1}})
      add("qdim-c3/2-forms-lam" + label_str(lam), "c-qdim-half-forms", "c[3/2] lambda=" + label_str(lam),
          HalfInt(20), [lam](HalfInt n) {
            return Sides{qdim_closed(Algebra::c, HalfInt::from_twice(3), lam, n, QdimForm::weyl_sum),
                         qdim_closed(Algebra::c, HalfInt::from_twice(3), lam, n, QdimForm::product)};
          });
    qdim_vs_extract(Algebra::c, HalfInt::half(), {0}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt::half(), {1}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt::from_twice(3), {1, 0}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt::from_twice(3), {2, 1}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt(-1), {0}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt(-1), {2}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt(-2), {1, 0}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt(-2), {2, 1}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt::from_twice(-3), {1}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt::from_twice(-5), {1, 0}, "c-qdim");
    qdim_vs_extract(Algebra::c, HalfInt::from_twice(-5), {2, 1}, "c-qdim");
    add("qdim-c-1/2", "c-qdim", "c[-1/2]", HalfInt(10), [](HalfInt n) {
      std::vector<Param> none;
      return Sides{qdim_closed(Algebra::c, HalfInt::from_twice(-1), {}, n),
                   neutral_trace(FockKind::boson_neutral, none, n)};
    });
    add("qdim-d1/2", "d-qdim", "d[1/2]", HalfInt(10), [](HalfInt n) {
      std::vector<Param> none;
      return Sides{qdim_closed(Algebra::d, HalfInt::half(), {}, n), neutral_trace(FockKind::fermion_neutral, none, n)};
    });
    qdim_vs_extract(Algebra::d, HalfInt(-1), {0}, "d-qdim");
    qdim_vs_extract(Algebra::d, HalfInt(-1), {3}, "d-qdim");
    qdim_vs_extract(Algebra::d, HalfInt(-2), {1, 0}, "d-qdim");
    qdim_vs_extract(Algebra::d, HalfInt(-2), {2, 1}, "d-qdim");
    qdim_vs_extract(Algebra::d, HalfInt::from_twice(-1), {1}, "d-qdim");
    qdim_vs_extract(Algebra::d, HalfInt::from_twice(-3), {1, 0}, "d-qdim");
    qdim_vs_extract(Algebra::d, HalfInt::from_twice(-3), {2, 1}, "d-qdim");

    // Displayed d_inf blocks: exact at level -1, reported for higher rank.
    for (int m : {0, 2})
      add("qdim-d-displayed-blocks-d-1-lam" + std::to_string(m), "d-qdim", "d[-1] lambda=" + std::to_string(m),
          HalfInt(10), [m](HalfInt n) {
            return Sides{qdim_d_printed_blocks(HalfInt(-1), {m}, n), qdim_closed(Algebra::d, HalfInt(-1), {m}, n)};
          });
    for (HalfInt level : {HalfInt(-2), HalfInt::from_twice(-3)})
      add("qdim-d-displayed-blocks-d" + level.str() + "-lam2,1", "d-qdim", "lambda=2,1", HalfInt(10),
          [level](HalfInt n) {
            const DualityInstance inst = duality_instance(Algebra::d, level);
            std::vector<Param> none;
            return Sides{qdim_d_printed_blocks(level, {2, 1}, n), duality_extract(inst, {2, 1}, none, n),
                         "displayed differenced blocks"};
          },
          false);
  }

  void duality_checks() {
    struct Case {
      Algebra alg;
      HalfInt level;
      std::string topic;
      std::vector<std::vector<int>> labels;
    };
    const std::vector<Case> cases{
        {Algebra::a, HalfInt(-2), "gl-duality", {{1, 0}, {1, -1}}},
        {Algebra::c, HalfInt::from_twice(3), "c-half-duality", {{1, 0}, {2, 1}}},
        {Algebra::c, HalfInt(-2), "c-integral-duality", {{1, 0}, {2, 1}}},
        {Algebra::c, HalfInt::from_twice(-5), "c-minus-half-duality", {{1, 0}, {2, 1}}},
        {Algebra::d, HalfInt(-2), "d-duality", {{1, 0}, {2, 1}}},
        {Algebra::d, HalfInt::from_twice(-3), "d-half-duality", {{1, 0}, {2, 1}}},
    };
    for (const Case& c : cases) {
      const std::string tag = algebra_name(c.alg) + c.level.str();
      for (const auto& lam : c.labels) {
        for (int np : {0, 1, 2}) {
          const std::string suffix = tag + "-lam" + label_str(lam) + "-n" + std::to_string(np);
          const std::string params =
              duality_instance(c.alg, c.level).name() + " lambda=" + label_str(lam) + " t=" + points_str(first_points(np));
          const Algebra alg = c.alg;
          const HalfInt level = c.level;
          add("duality-assign-" + suffix, c.topic, params, HalfInt(8), [alg, level, lam, np](HalfInt n) {
            const DualityInstance inst = duality_instance(alg, level);
            const auto pts = first_points(np);
            return Sides{duality_reduce(inst, lam, pts, n, ReductionMode::assignment),
                         duality_extract(inst, lam, pts, n)};
          });
          if (np == 0) {
            add("duality-modes-agree-" + suffix, c.topic, params, HalfInt(8), [alg, level, lam](HalfInt n) {
              const DualityInstance inst = duality_instance(alg, level);
              std::vector<Param> none;
              return Sides{duality_reduce(inst, lam, none, n, ReductionMode::literal),
                           duality_reduce(inst, lam, none, n, ReductionMode::assignment)};
            });
          } else {
            add("duality-literal-" + suffix, c.topic, params, HalfInt(8),
                [alg, level, lam, np](HalfInt n) {
                  const DualityInstance inst = duality_instance(alg, level);
                  const auto pts = first_points(np);
                  return Sides{duality_reduce(inst, lam, pts, n, ReductionMode::literal),
                               duality_extract(inst, lam, pts, n), "literal product form against the trace"};
                },
                false);
          }
        }
      }
    }
    // Hand expansion at q^0 for a[-2], lambda=(0,0), t=2/3 where beta = 6/5.
    add("duality-hand-q0-assign", "gl-duality", "a[-2] lambda=0,0 t=2/3", HalfInt(0), [](HalfInt n) {
      const auto pts = first_points(1);
      return Sides{duality_reduce(duality_instance(Algebra::a, HalfInt(-2)), {0, 0}, pts, n,
                                  ReductionMode::assignment),
                   constant(Rational(12, 5), n), "2 beta"};
    });
    add("duality-hand-q0-literal", "gl-duality", "a[-2] lambda=0,0 t=2/3", HalfInt(0), [](HalfInt n) {
      const auto pts = first_points(1);
      return Sides{duality_reduce(duality_instance(Algebra::a, HalfInt(-2)), {0, 0}, pts, n, ReductionMode::literal),
                   constant(Rational(36, 25), n), "beta^2"};
    });
    add("duality-hand-q0-trace", "gl-duality", "a[-2] lambda=0,0 t=2/3", HalfInt(0), [](HalfInt n) {
      const auto pts = first_points(1);
      return Sides{duality_extract(duality_instance(Algebra::a, HalfInt(-2)), {0, 0}, pts, n),
                   constant(Rational(12, 5), n), "2 beta"};
    });
  }

  void character_checks() {
    // numerator(lambda) = numerator(0) * character, with a known character.
    add("weyl-char-trivial-gl-l3", "weyl-character", "l=3", HalfInt(0), [](HalfInt n) {
      return Sides{lift(char_numerator(CharKind::gl, {0, 0, 0}, 3), n),
                   lift(weyl_denominator(WeylType::A, 3), n)};
    });
    add("weyl-char-gl-vector-l2", "weyl-character", "l=2 lambda=1,0", HalfInt(0), [](HalfInt n) {
      return Sides{lift(char_numerator(CharKind::gl, {1, 0}, 2), n),
                   lift(weyl_denominator(WeylType::A, 2), n) *
                       (zmono(Rational(1), {1, 0}, n) + zmono(Rational(1), {0, 1}, n))};
    });
    add("weyl-char-gl-dual-vector-l2", "weyl-character", "l=2 lambda=0,-1", HalfInt(0), [](HalfInt n) {
      return Sides{lift(char_numerator(CharKind::gl, {0, -1}, 2), n),
                   lift(weyl_denominator(WeylType::A, 2), n) *
                       (zmono(Rational(1), {-1, 0}, n) + zmono(Rational(1), {0, -1}, n))};
    });
    // Exponents doubled: w_j = z_j^(1/2).
    add("osp-char-vector-l1", "osp-character", "l=1 lambda=1", HalfInt(0), [](HalfInt n) {
      return Sides{lift(char_numerator(CharKind::osp_b, {1}, 1), n),
                   lift(char_numerator(CharKind::osp_b, {0}, 1), n) *
                       (zmono(Rational(1), {2}, n) + zmono(Rational(1), {0}, n) + zmono(Rational(1), {-2}, n))};
    });
    add("osp-char-vector-l2", "osp-character", "l=2 lambda=1,0", HalfInt(0), [](HalfInt n) {
      Series v = zmono(Rational(1), {0, 0}, n);
      for (int s : {2, -2}) v += zmono(Rational(1), {s, 0}, n) + zmono(Rational(1), {0, s}, n);
      return Sides{lift(char_numerator(CharKind::osp_b, {1, 0}, 2), n),
                   lift(char_numerator(CharKind::osp_b, {0, 0}, 2), n) * v};
    });
    add("o2l-char-vector-l2", "o2l-character", "l=2 lambda=1,0", HalfInt(0), [](HalfInt n) {
      Series v(n);
      for (int s : {1, -1}) v += zmono(Rational(1), {s, 0}, n) + zmono(Rational(1), {0, s}, n);
      return Sides{lift(char_numerator(CharKind::o_even, {1, 0}, 2), n),
                   lift(char_numerator(CharKind::o_even, {0, 0}, 2), n) * v};
    });
    add("sp-char-vector-l2", "weyl-character", "l=2 lambda=1,0", HalfInt(0), [](HalfInt n) {
      Series v(n);
      for (int s : {1, -1}) v += zmono(Rational(1), {s, 0}, n) + zmono(Rational(1), {0, s}, n);
      return Sides{lift(char_numerator(CharKind::sp, {1, 0}, 2), n),
                   lift(char_numerator(CharKind::sp, {0, 0}, 2), n) * v};
    });
    // Coefficients of a highest weight label add up to the level.
    const std::vector<std::tuple<Algebra, HalfInt, std::vector<int>>> labels{
        {Algebra::a, HalfInt(-2), {1, -1}}, {Algebra::a, HalfInt(-3), {2, 0, -1}},
        {Algebra::c, HalfInt::from_twice(3), {2, 1}}, {Algebra::c, HalfInt(-2), {2, 1}},
        {Algebra::c, HalfInt::from_twice(-5), {1, 0}}};
    for (const auto& [alg, level, lam] : labels)
      add("weight-label-level-" + algebra_name(alg) + level.str() + "-lam" + label_str(lam), "weight-labels",
          "lambda=" + label_str(lam), HalfInt(0), [alg, level, lam](HalfInt n) {
            HalfInt total(0);
            for (const auto& [idx, c] : highest_weight_label(alg, level, lam).terms) total = total + c;
            return Sides{constant(Rational(total.twice(), 2), n), constant(Rational(level.twice(), 2), n)};
          });
    add("generalized-partition-count", "weight-labels", "l=2 entries in [-3,3]", HalfInt(0), [](HalfInt n) {
      return Sides{constant(Rational(static_cast<long>(generalized_partitions(2, -3, 3).size())), n),
                   constant(Rational(28), n)};
    });
  }

  void infrastructure() {
    add("infra-truncation-coherence", "infrastructure", "one-point t=2/3 N=12 vs 8", HalfInt(8), [](HalfInt n) {
      return Sides{one_point_minus1(P(2, 3), n + HalfInt(4)).truncate(n), one_point_minus1(P(2, 3), n)};
    });
    add("infra-invert-roundtrip", "infrastructure", "theta t=2/3", HalfInt(12), [](HalfInt n) {
      const Series th = theta(P(2, 3), n);
      return Sides{(th * invert(th)).truncate(n), constant(Rational(1), n)};
    });
    add("infra-json-roundtrip", "infrastructure", "two-point x=2/5 y=3/7 t=2/3,3/5", HalfInt(6), [](HalfInt n) {
      const Series s = generalized_two_point(kX, kY, P(2, 3), P(3, 5), n);
      return Sides{series_from_json(to_json(s)), s};
    });
    for (WeylType type : {WeylType::A, WeylType::B, WeylType::C, WeylType::D})
      for (int l = 1; l <= 4; ++l) {
        static const char* names = "ABCD";
        const std::string nm = std::string(1, names[static_cast<int>(type)]) + std::to_string(l);
        add("infra-weyl-order-" + nm, "infrastructure", nm, HalfInt(0), [type, l](HalfInt n) {
          long fact = 1;
          for (int i = 2; i <= l; ++i) fact *= i;
          long expect = fact;
          if (type == WeylType::B || type == WeylType::C) expect = fact << l;
          if (type == WeylType::D) expect = fact << (l - 1);
          return Sides{constant(Rational(static_cast<long>(weyl_group(type, l).size())), n),
                       constant(Rational(expect), n)};
        });
      }
    add("registry-completeness", "infrastructure", "all topics", HalfInt(0), [](HalfInt n) {
      const auto missing = uncovered_topics(registry());
      std::string note;
      for (const auto& m : missing) note += (note.empty() ? "" : ",") + m;
      return Sides{constant(Rational(static_cast<long>(missing.size())), n), constant(Rational(0), n), note};
    });
  }

  Registry() {
    identities();
    theta_checks();
    a_level_minus1();
    fock_checks();
    c_level_half();
    qdiff_checks();
    qdim_checks();
    duality_checks();
    character_checks();
    infrastructure();
    std::sort(checks.begin(), checks.end(), [](const CheckSpec& a, const CheckSpec& b) { return a.name < b.name; });
  }
};

bool glob(std::string_view p, std::string_view s) {
  std::size_t pi = 0, si = 0, star = std::string_view::npos, mark = 0;
  while (si < s.size()) {
    if (pi < p.size() && (p[pi] == '?' || p[pi] == s[si])) {
      ++pi;
      ++si;
    } else if (pi < p.size() && p[pi] == '*') {
      star = pi++;
      mark = si;
    } else if (star != std::string_view::npos) {
      pi = star + 1;
      si = ++mark;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == '*') ++pi;
  return pi == p.size();
}

}  // namespace

const std::vector<CheckSpec>& registry() {
  static const Registry r;
  return r.checks;
}

const CheckSpec* find_check(std::string_view name) {
  for (const CheckSpec& c : registry())
    if (c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& required_topics() {
  static const std::vector<std::string> topics{
      "exponential",       "poch-ratio",         "ff-identity",          "ff-expansion",
      "fock-oracle",       "length-sums",        "one-point",            "general-ab",
      "part-sum-generating", "residue-one-point", "two-point",           "residue-two-point",
      "weight-labels",     "weyl-character",     "gl-duality",           "qdiff-a",
      "qdim-identity",     "qdim-level-minus1",  "qdim-level-l",         "c-commutator",
      "c-one-point-half",  "qdiff-c",            "c-half-duality",       "osp-character",
      "theta",             "level-one-sector",   "c-qdim-half-forms",    "c-integral-duality",
      "c-ctoa",            "o2l-character",      "c-minus-half-duality", "c-qdim",
      "d-duality",         "d-sector",           "d-half-duality",       "neutral-fermion",
      "d-qdim",            "infrastructure"};
  return topics;
}

std::vector<std::string> uncovered_topics(const std::vector<CheckSpec>& checks) {
  std::set<std::string> seen;
  for (const CheckSpec& c : checks)
    if (c.gating) seen.insert(c.topic);
  std::vector<std::string> out;
  for (const std::string& t : required_topics())
    if (!seen.count(t)) out.push_back(t);
  return out;
}

bool name_matches(std::string_view pattern, std::string_view name) {
  if (pattern.empty()) return true;
  if (pattern.find_first_of("*?") == std::string_view::npos) return name.substr(0, pattern.size()) == pattern;
  return glob(pattern, name);
}

CheckResult run_check(const CheckSpec& spec, std::optional<HalfInt> n_opt) {
  CheckResult r;
  r.name = spec.name;
  r.topic = spec.topic;
  r.params = spec.params;
  r.gating = spec.gating;
  const HalfInt n = n_opt.value_or(spec.n);
  r.n = n;
  const auto start = std::chrono::steady_clock::now();
  try {
    Sides sides = spec.compute(n);
    r.message = sides.note;
    if (sides.lhs.truncation() < n || sides.rhs.truncation() < n)
      throw NonTruncatable("a side is known only to q^" +
                           std::min(sides.lhs.truncation(), sides.rhs.truncation()).str());
    const Series a = sides.lhs.truncate(n), b = sides.rhs.truncate(n);
    if (a.terms() == b.terms()) {
      r.status = CheckStatus::pass;
    } else {
      r.status = CheckStatus::fail;
      const std::optional<Monomial> m = first_difference(a, b);
      if (m) r.first_discrepancy = Discrepancy{*m, a.coeff(*m), b.coeff(*m)};
    }
  } catch (const Error& e) {
    r.status = CheckStatus::error;
    r.error_kind = e.kind();
    r.message = e.what();
  } catch (const std::exception& e) {
    r.status = CheckStatus::error;
    r.error_kind = "exception";
    r.message = e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> run_suite(std::string_view filter, unsigned threads) {
  std::vector<const CheckSpec*> selected;
  for (const CheckSpec& c : registry())
    if (name_matches(filter, c.name)) selected.push_back(&c);
  std::vector<CheckResult> results(selected.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, selected.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) results[i] = run_check(*selected[i]);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

bool suite_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return !r.gating || r.status == CheckStatus::pass; });
}

nlohmann::json report_json(const std::vector<CheckResult>& results, bool with_timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : results) {
    nlohmann::json j;
    j["name"] = r.name;
    j["status"] = status_name(r.status);
    j["gating"] = r.gating;
    j["topic"] = r.topic;
    j["params"] = r.params;
    j["N"] = r.n.str();
    if (r.first_discrepancy) {
      j["first_discrepancy"] = {{"monomial", monomial_str(r.first_discrepancy->monomial)},
                                {"lhs", to_string(r.first_discrepancy->lhs)},
                                {"rhs", to_string(r.first_discrepancy->rhs)}};
    } else {
      j["first_discrepancy"] = nullptr;
    }
    if (!r.error_kind.empty()) j["error"] = r.error_kind;
    if (!r.message.empty()) j["message"] = r.message;
    if (with_timing) j["ms"] = std::round(r.ms * 1000) / 1000;
    checks.push_back(std::move(j));
  }
  return nlohmann::json{{"checks", checks}};
}

std::string report_table(const std::vector<CheckResult>& results) {
  std::size_t w = 4;
  for (const CheckResult& r : results) w = std::max(w, r.name.size());
  std::ostringstream out;
  char buf[64];
  for (const CheckResult& r : results) {
    std::string status = status_name(r.status);
    if (!r.gating) status += "*";
    std::snprintf(buf, sizeof buf, "%10.1f ms", r.ms);
    out << r.name << std::string(w - r.name.size() + 2, ' ') << status << std::string(8 - status.size(), ' ')
        << "N=" << r.n.str() << std::string(r.n.str().size() < 5 ? 5 - r.n.str().size() : 1, ' ') << buf;
    if (r.first_discrepancy)
      out << "  at " << monomial_str(r.first_discrepancy->monomial) << ": " << to_string(r.first_discrepancy->lhs)
          << " vs " << to_string(r.first_discrepancy->rhs);
    if (!r.error_kind.empty()) out << "  " << r.error_kind << ": " << r.message;
    else if (!r.message.empty()) out << "  (" << r.message << ")";
    out << "\n";
  }
  std::size_t pass = 0, gating_bad = 0, info = 0;
  for (const CheckResult& r : results) {
    if (r.status == CheckStatus::pass) ++pass;
    if (!r.gating) ++info;
    else if (r.status != CheckStatus::pass) ++gating_bad;
  }
  out << pass << "/" << results.size() << " pass, " << gating_bad << " gating failures, " << info
      << " informational (*)\n";
  return out.str();
}

}  // namespace bocorr
