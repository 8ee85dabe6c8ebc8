#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bocorr/combinat.hpp"
#include "bocorr/fock.hpp"
#include "bocorr/qseries.hpp"

namespace bocorr {

// ---------------------------------------------------------------------------
// Identities between q-series (left and right hand sides).

// sum_m (-z)^m q^(m(m-1)/2) / (q)_m  and  (z)_inf
Series exponential_sum(const Param& z, HalfInt n);
Series exponential_product(const Param& z, HalfInt n);
// sum_l (a)_l z^l / (q)_l  and  (az)_inf / (z)_inf
Series binomial_sum(const Param& a, const Param& z, HalfInt n);
Series binomial_product(const Param& a, const Param& z, HalfInt n);

// sum_l q^l / ((q)_l (tq)_{l+k})  and  its product/theta-sum form.
Series poch_ratio_sum(int k, const Param& t, HalfInt n);
Series poch_ratio_closed(int k, const Param& t, HalfInt n);

// 1/((u)_inf (q/u)_inf) for a monomial u of positive q-valuation, and the
// two expansions: the double sum over m >= 0 and the bilateral sum
// sum_m (-1)^m q^(m(m+1)/2) / (1 - u q^m), with 1/(1 - w) expanded in w^(-1)
// whenever w has negative q-valuation.
Series ff_lhs(const Term& u, HalfInt n);
Series ff_double_sum(const Term& u, HalfInt n);
Series ff_bilateral(const Term& u, HalfInt n);

// Partition sums: sum_{l(p)=l} q^|p| and sum_{l(p)=l} q^|p| t^{p_i}.
Series length_sum(int l, HalfInt n);
Series length_sum_closed(int l, HalfInt n);
Series part_sum(int l, int i, const Param& t, HalfInt n);
Series part_sum_closed(int l, int i, const Param& t, HalfInt n);

// ---------------------------------------------------------------------------
// a_inf at level -1.

// Q^{(k)}_{-1}(q) = (q)_inf^{-2} sum_{m>=0} (-1)^m q^{m(m+1)/2 + |k|(m+1/2)}
Series qdim_a_minus1(int k, HalfInt n);
Series one_point_minus1(const Param& t, HalfInt n);

// x (tq)^(1/2) (xtq^(3/2))_inf / ((1-xq^(1/2)) (tq)_inf (xq^(1/2))_inf) 2Phi2(...)
Series omega_numerator(const Param& x, const Param& t, HalfInt n);
// sum_l x^l q^(-l/2) sum_{l(p)=l} q^|p| sum_i t^(p_i - 1/2), by enumeration.
Series omega_partition_sum(const Param& x, const Param& t, HalfInt n);
Series omega(const Param& x, const Param& y, const Param& t, HalfInt n);
Series generalized_one_point(const Param& x, const Param& y, const Param& t, HalfInt n);

Series gamma_bar(const Param& x, const Param& t1, const Param& t2, HalfInt n);
Series gamma_fn(const Param& x, const Param& y, const Param& t1, const Param& t2, HalfInt n);

enum class TwoPointForm {
  printed,  // cross term Omega(x,y,1/t1) Omega(y,x,t2) as displayed
  paired,   // cross term Omega(x,y,t2) Omega(y,x,1/t1)
};
Series generalized_two_point(const Param& x, const Param& y, const Param& t1, const Param& t2, HalfInt n,
                             TwoPointForm form = TwoPointForm::paired);

// Charge-m sector function of F^{-1} from the closed forms (n <= 2 points);
// larger n falls back to the state sum.
Series a_sector(int m, std::span<const Param> points, HalfInt n);

// ---------------------------------------------------------------------------
// Level 1 and c_inf / d_inf at level -1.

Series f_bo(std::span<const Param> points, HalfInt n);
// q^(k^2/2) (t_1...t_n)^k F_bo: trace of prod A(t_j) over the charge-k sector of F^1.
Series level1_sector(int k, std::span<const Param> points, HalfInt n);
// Same sector with C(t) = A(t) - A(1/t).
Series level1_sector_c(int k, std::span<const Param> points, HalfInt n);

Series c_one_point_half(const Param& t, HalfInt n);

// sum over eps in {+-1}^n of (prod eps) times the charge-m a_inf sector at t^eps.
Series c_sector_minus1(int m, std::span<const Param> points, HalfInt n);
// D^{(m)}_{-1} = c_sector(m) - c_sector(m+2).
Series d_sector_minus1(int m, std::span<const Param> points, HalfInt n);

// ---------------------------------------------------------------------------
// q-dimensions.

enum class QdimForm { weyl_sum, product };
// label: generalized partition for a_inf, partition otherwise (padded to the rank).
Series qdim_closed(Algebra algebra, HalfInt level, const std::vector<int>& label, HalfInt n,
                   QdimForm form = QdimForm::weyl_sum);
// Displayed d_inf formulas that take the differenced level -1 series as
// building blocks (kept for reporting; see README).
Series qdim_d_printed_blocks(HalfInt level, const std::vector<int>& label, HalfInt n);

// ---------------------------------------------------------------------------
// Howe duality reductions.

struct DualityInstance {
  Algebra algebra;
  HalfInt level;
  int rank = 0;
  std::vector<FockFactor> factors;  // charged factors, then the neutral one if any
  OpTag op = OpTag::A;
  WeylType weyl = WeylType::A;
  std::vector<HalfInt> rho;
  std::string name() const;
  bool has_neutral() const;
  int charged_count() const { return rank; }
};

DualityInstance duality_instance(Algebra algebra, HalfInt level);
// Pads/validates a label for the instance. Throws InvalidArgument.
std::vector<int> normalize_label(const DualityInstance& inst, const std::vector<int>& label);

enum class ReductionMode { literal, assignment };

// Weyl sum of products of base-level functions.
Series duality_reduce(const DualityInstance& inst, const std::vector<int>& label, std::span<const Param> points,
                      HalfInt n, ReductionMode mode);
// Dominant-monomial extraction from the tensor-product trace.
Series duality_extract(const DualityInstance& inst, const std::vector<int>& label, std::span<const Param> points,
                       HalfInt n);

// ---------------------------------------------------------------------------
// q-difference equations: LHS at (q t_1, t_2, ...) minus RHS.

enum class QdiffForm {
  printed,  // as displayed
  shifted,  // a_inf: sign (-1)^s and the charge -1 sector on the right
};
Series qdiff_lhs(Algebra algebra, std::span<const Param> points, HalfInt n);
Series qdiff_rhs(Algebra algebra, std::span<const Param> points, HalfInt n, QdiffForm form);
Series qdiff_residual(Algebra algebra, std::span<const Param> points, HalfInt n, QdiffForm form = QdiffForm::printed);

// Multi-variable coefficient [z_1^k_1 ... z_r^k_r].
Series coeff_zvec(const Series& s, const std::vector<int>& k);

}  // namespace bocorr
