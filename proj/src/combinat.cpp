#include "bocorr/combinat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "bocorr/errors.hpp"

namespace bocorr {

int weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

HalfInt energy(const Partition& p) {
  return HalfInt::from_twice(2 * weight(p) - static_cast<std::int64_t>(p.size()));
}

namespace {

void gen_partitions(int remaining, int max_part, std::optional<int> max_len, Partition& cur,
                    std::vector<Partition>& out) {
  out.push_back(cur);
  if (max_len && static_cast<int>(cur.size()) >= *max_len) return;
  for (int p = std::min(max_part, remaining); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(remaining - p, p, max_len, cur, out);
    cur.pop_back();
  }
}

void gen_strict(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  out.push_back(cur);
  for (int p = std::min(max_part, remaining); p >= 1; --p) {
    cur.push_back(p);
    gen_strict(remaining - p, p - 1, cur, out);
    cur.pop_back();
  }
}

void gen_energy(std::int64_t budget2, int max_part, bool strict, Partition& cur,
                const std::function<void(const Partition&)>& visit) {
  visit(cur);
  for (int p = max_part; p >= 1; --p) {
    std::int64_t cost = 2 * p - 1;
    if (cost > budget2) continue;
    cur.push_back(p);
    gen_energy(budget2 - cost, strict ? p - 1 : p, strict, cur, visit);
    cur.pop_back();
  }
}

int perm_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<Partition> partitions_up_to(int max_weight, std::optional<int> max_length) {
  std::vector<Partition> out;
  Partition cur;
  if (max_weight < 0) return out;
  gen_partitions(max_weight, max_weight, max_length, cur, out);
  return out;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  for (auto& p : partitions_up_to(n))
    if (weight(p) == n) out.push_back(std::move(p));
  return out;
}

std::vector<Partition> partitions_with_length(int max_weight, int length) {
  std::vector<Partition> out;
  for (auto& p : partitions_up_to(max_weight, length))
    if (static_cast<int>(p.size()) == length) out.push_back(std::move(p));
  return out;
}

std::vector<Partition> strict_partitions_up_to(int max_weight) {
  std::vector<Partition> out;
  Partition cur;
  if (max_weight < 0) return out;
  gen_strict(max_weight, max_weight, cur, out);
  return out;
}

std::vector<GenPartition> generalized_partitions(int l, int lo, int hi) {
  std::vector<GenPartition> out;
  if (l <= 0) {
    out.emplace_back();
    return out;
  }
  GenPartition cur(l, lo);
  std::function<void(int, int)> rec = [&](int i, int upper) {
    if (i == l) {
      out.push_back(cur);
      return;
    }
    for (int v = upper; v >= lo; --v) {
      cur[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, hi);
  return out;
}

void for_each_by_energy(HalfInt max_energy, bool strict, const std::function<void(const Partition&)>& visit) {
  if (max_energy < HalfInt(0)) return;
  Partition cur;
  const std::int64_t budget2 = max_energy.twice();
  gen_energy(budget2, static_cast<int>((budget2 + 1) / 2), strict, cur, visit);
}

std::size_t weyl_order(WeylType type, int l) {
  std::size_t f = 1;
  for (int i = 2; i <= l; ++i) f *= static_cast<std::size_t>(i);
  switch (type) {
    case WeylType::A: return f;
    case WeylType::B:
    case WeylType::C: return f << l;
    case WeylType::D: return l == 0 ? 1 : f << (l - 1);
  }
  return f;
}

std::vector<WeylElement> weyl_group(WeylType type, int l, int cap) {
  if (l < 0) throw InvalidArgument("Weyl group rank must be nonnegative");
  if (l > cap) throw CapExceeded("Weyl group rank " + std::to_string(l) + " exceeds cap " + std::to_string(cap));
  std::vector<WeylElement> out;
  out.reserve(weyl_order(type, l));
  std::vector<int> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  const bool flips = type != WeylType::A;
  do {
    const int ps = perm_sign(perm);
    for (unsigned mask = 0; mask < (flips ? (1U << l) : 1U); ++mask) {
      int nflip = std::popcount(mask);
      if (type == WeylType::D && nflip % 2 != 0) continue;
      WeylElement w;
      w.perm = perm;
      w.signs.resize(l);
      for (int i = 0; i < l; ++i) w.signs[i] = (mask >> i) & 1U ? -1 : 1;
      w.sign = ps * (nflip % 2 == 0 ? 1 : -1);
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<HalfInt> weyl_rho(WeylType type, int l) {
  std::vector<HalfInt> rho(l);
  for (int i = 0; i < l; ++i) {
    const int base = l - 1 - i;
    switch (type) {
      case WeylType::A:
      case WeylType::D: rho[i] = HalfInt(base); break;
      case WeylType::B: rho[i] = HalfInt(base) + HalfInt::half(); break;
      case WeylType::C: rho[i] = HalfInt(base + 1); break;
    }
  }
  return rho;
}

std::vector<HalfInt> apply(const WeylElement& w, const std::vector<HalfInt>& v) {
  std::vector<HalfInt> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[w.perm[i]] * w.signs[i];
  return out;
}

std::vector<int> k_vector(const std::vector<int>& lambda, const WeylElement& w, const std::vector<HalfInt>& rho) {
  if (lambda.size() != rho.size() || w.perm.size() != rho.size())
    throw InvalidArgument("k_vector: rank mismatch");
  std::vector<HalfInt> wr = apply(w, rho);
  std::vector<int> k(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    HalfInt v = HalfInt(lambda[i]) + rho[i] - wr[i];
    k[i] = static_cast<int>(v.to_int());
  }
  return k;
}

namespace {

// sum over w of coef(w) * z^(w a), exponents given doubled.
Series alternant(const std::vector<WeylElement>& group, const std::vector<std::int64_t>& a2, bool doubled,
                 bool use_det_sign) {
  Series s(HalfInt(0));
  for (const auto& w : group) {
    ZExp z;
    for (std::size_t i = 0; i < a2.size(); ++i) {
      std::int64_t e2 = a2[w.perm[i]] * w.signs[i];
      z[static_cast<int>(i) + 1] = static_cast<std::int32_t>(doubled ? e2 : e2 / 2);
    }
    int sign = use_det_sign ? w.sign : perm_sign(w.perm);
    s.add(Monomial{HalfInt(0), z}, Rational(sign));
  }
  return s;
}

}  // namespace

Series char_numerator(CharKind kind, const std::vector<int>& lambda, int l) {
  if (static_cast<int>(lambda.size()) != l) throw InvalidArgument("char_numerator: lambda must have length l");
  for (int i = 1; i < l; ++i)
    if (lambda[i] > lambda[i - 1]) throw InvalidArgument("char_numerator: lambda must be weakly decreasing");
  if (kind != CharKind::gl && l > 0 && lambda.back() < 0)
    throw InvalidArgument("char_numerator: lambda must be a partition");
  std::vector<std::int64_t> a2(l);
  switch (kind) {
    case CharKind::gl:
      for (int i = 0; i < l; ++i) a2[i] = 2 * (lambda[i] + l - 1 - i);
      return alternant(weyl_group(WeylType::A, l), a2, false, true);
    case CharKind::sp:
      for (int i = 0; i < l; ++i) a2[i] = 2 * (lambda[i] + l - i);
      return alternant(weyl_group(WeylType::C, l), a2, false, true);
    case CharKind::osp_b:
      for (int i = 0; i < l; ++i) a2[i] = 2 * (lambda[i] + l - 1 - i) + 1;
      return alternant(weyl_group(WeylType::B, l), a2, true, true);
    case CharKind::o_even:
      for (int i = 0; i < l; ++i) a2[i] = 2 * (lambda[i] + l - 1 - i);
      return alternant(weyl_group(WeylType::B, l), a2, false, false);
  }
  return Series(HalfInt(0));
}

Series weyl_denominator(WeylType type, int l) {
  std::vector<HalfInt> rho = weyl_rho(type, l);
  std::vector<std::int64_t> a2(l);
  for (int i = 0; i < l; ++i) a2[i] = rho[i].twice();
  return alternant(weyl_group(type, l), a2, type == WeylType::B, true);
}

std::string algebra_name(Algebra a) {
  switch (a) {
    case Algebra::a: return "a";
    case Algebra::c: return "c";
    case Algebra::d: return "d";
  }
  return "?";
}

Algebra parse_algebra(std::string_view s) {
  if (s == "a" || s == "a_inf" || s == "ainf") return Algebra::a;
  if (s == "c" || s == "c_inf" || s == "cinf") return Algebra::c;
  if (s == "d" || s == "d_inf" || s == "dinf") return Algebra::d;
  if (s == "b" || s == "b_inf" || s == "binf")
    throw InvalidArgument("b_inf does not feature in a Howe duality with these Fock spaces; use a, c or d");
  throw InvalidArgument("unsupported algebra '" + std::string(s) + "' (expected a, c or d)");
}

namespace {

std::string subscript(int i) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out = i < 0 ? "₋" : "";
  std::string dec = std::to_string(i < 0 ? -i : i);
  for (char c : dec) out += digits[c - '0'];
  return out;
}

std::string signed_coeff(HalfInt c) {
  std::string s = c.str();
  if (!s.empty() && s.front() == '-') s = "−" + s.substr(1);
  return s;
}

void add_term(std::vector<std::pair<int, HalfInt>>& terms, int index, HalfInt coeff) {
  for (auto& [i, c] : terms)
    if (i == index) {
      c += coeff;
      return;
    }
  terms.emplace_back(index, coeff);
}

int parts_positive(const std::vector<int>& lambda) {
  int j = 0;
  for (int v : lambda)
    if (v > 0) ++j;
  return j;
}

}  // namespace

std::string WeightLabel::str() const {
  std::string out;
  for (const auto& [i, c] : terms) {
    if (c == HalfInt(0) && i != 0) continue;
    if (!out.empty()) out += " + ";
    out += signed_coeff(c) + "·Λ" + subscript(i);
  }
  if (out.empty()) out = "0";
  if (!warning.empty()) out += "  [" + warning + "]";
  return out;
}

WeightLabel highest_weight_label(Algebra algebra, HalfInt level, const std::vector<int>& lambda) {
  WeightLabel label;
  const int l = static_cast<int>(lambda.size());
  auto at = [&](int k) { return k >= 1 && k <= l ? lambda[k - 1] : 0; };
  if (l == 0) throw InvalidArgument("highest_weight_label: empty lambda");
  switch (algebra) {
    case Algebra::a: {
      add_term(label.terms, 0, HalfInt(at(l) - at(1) - l));
      int i = 0;
      for (int k = 1; k <= l; ++k)
        if (at(k) > 0) i = k;
      for (int k = 1; k < i; ++k) add_term(label.terms, k, HalfInt(at(k) - at(k + 1)));
      if (i > 0) add_term(label.terms, i, HalfInt(at(i)));
      // negative entries, mirrored onto negative indices
      int first_neg = 0;
      for (int k = l; k >= 1; --k)
        if (at(k) < 0) first_neg = k;
      if (first_neg > 0) {
        for (int k = l; k > first_neg; --k) add_term(label.terms, -(l - k + 1), HalfInt(at(k - 1) - at(k)));
        add_term(label.terms, -(l - first_neg + 1), HalfInt(-at(first_neg)));
      }
      if (at(l) > 0 || at(1) < 0)
        label.warning = "coefficients sum to " + HalfInt(at(l) > 0 ? at(l) - l : -at(1) - l).str() +
                        ", not the level; printed formula shown verbatim";
      return label;
    }
    case Algebra::c: {
      const int j = parts_positive(lambda);
      if (level > HalfInt(0)) {
        add_term(label.terms, 0, level - HalfInt(j));
        for (int k = 1; k <= j; ++k) add_term(label.terms, at(k), HalfInt(1));
        return label;
      }
      if (level.is_integer()) {
        add_term(label.terms, 0, HalfInt(-l - at(1)));
        for (int k = 1; k <= j; ++k) add_term(label.terms, 0, HalfInt(at(k) - at(k + 1)));
        label.warning = "printed formula repeats Λ₀ where the index pattern suggests Λ_k; shown verbatim";
        return label;
      }
      add_term(label.terms, 0, HalfInt(-l - at(1)) - HalfInt::half());
      for (int k = 1; k <= j; ++k) add_term(label.terms, k, HalfInt(at(k) - at(k + 1)));
      return label;
    }
    case Algebra::d: {
      const HalfInt base = level.is_integer() ? HalfInt(-2 * l) : HalfInt(-2 * l + 1);
      add_term(label.terms, 0, base - HalfInt(at(1) + at(2)));
      for (int k = 1; k <= l; ++k) add_term(label.terms, k, HalfInt(at(k) - at(k + 1)));
      return label;
    }
  }
  return label;
}

}  // namespace bocorr
