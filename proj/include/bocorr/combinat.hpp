#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bocorr/halfint.hpp"
#include "bocorr/series.hpp"

namespace bocorr {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;
// Weakly decreasing integers of fixed length (entries may be negative).
using GenPartition = std::vector<int>;

int weight(const Partition& p);

std::vector<Partition> partitions_of(int n);
// All partitions with |p| <= max_weight, optionally with at most max_length parts.
std::vector<Partition> partitions_up_to(int max_weight, std::optional<int> max_length = std::nullopt);
// Partitions with exactly `length` parts and |p| <= max_weight.
std::vector<Partition> partitions_with_length(int max_weight, int length);
// Distinct-part partitions with |p| <= max_weight.
std::vector<Partition> strict_partitions_up_to(int max_weight);
// Length-l weakly decreasing integer tuples with entries in [lo, hi].
std::vector<GenPartition> generalized_partitions(int l, int lo, int hi);

// Visits every partition (strict if requested) whose energy sum(p_i - 1/2)
// is at most max_energy.
void for_each_by_energy(HalfInt max_energy, bool strict, const std::function<void(const Partition&)>& visit);
HalfInt energy(const Partition& p);

enum class WeylType { A, B, C, D };

// Signed permutation acting by (w v)_i = signs[i] * v[perm[i]].
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> signs;
  int sign = 1;  // determinant of the signed permutation matrix
};

inline constexpr int kWeylRankCap = 6;

// Throws CapExceeded for l > cap.
std::vector<WeylElement> weyl_group(WeylType type, int l, int cap = kWeylRankCap);
std::size_t weyl_order(WeylType type, int l);

// A, D: (l-1, ..., 0); B: (l-1/2, ..., 1/2); C: (l, ..., 1).
std::vector<HalfInt> weyl_rho(WeylType type, int l);
std::vector<HalfInt> apply(const WeylElement& w, const std::vector<HalfInt>& v);
// lambda + rho - w(rho); integral for every supported type.
std::vector<int> k_vector(const std::vector<int>& lambda, const WeylElement& w, const std::vector<HalfInt>& rho);

enum class CharKind { gl, sp, osp_b, o_even };

// Determinant numerator of the Weyl character formula in z_1..z_l.
// For osp_b the exponents are half-integral; the result is written in the
// variables z_j^(1/2), i.e. with every exponent doubled.
Series char_numerator(CharKind kind, const std::vector<int>& lambda, int l);
// sum_w sign(w) z^(w rho), exponents doubled for type B.
Series weyl_denominator(WeylType type, int l);

enum class Algebra { a, c, d };

std::string algebra_name(Algebra a);
Algebra parse_algebra(std::string_view s);

struct WeightLabel {
  std::vector<std::pair<int, HalfInt>> terms;  // (fundamental weight index, coefficient)
  std::string warning;
  std::string str() const;
};

WeightLabel highest_weight_label(Algebra algebra, HalfInt level, const std::vector<int>& lambda);

}  // namespace bocorr
