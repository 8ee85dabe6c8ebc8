#include "bocorr/closedform.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "bocorr/errors.hpp"

namespace bocorr {

namespace {

const HalfInt kHalf = HalfInt::half();
const HalfInt kThreeHalves = HalfInt::from_twice(3);

Series one(HalfInt n) { return Series::constant(Rational(1), n); }

Term tmul(const Term& a, const Term& b) { return Term{a.c * b.c, Monomial{a.m.q + b.m.q, a.m.z + b.m.z}}; }

Term qterm(HalfInt e, const Rational& c = Rational(1)) { return Term{c, Monomial{e, {}}}; }

Series times(const Series& s, const Term& t, HalfInt n) { return s.times(t).truncate(n); }

// 1/(w)_inf as a product of geometric series; factors of valuation <= 0 are
// expanded by geometric() and must be z-free at valuation 0.
Series inv_poch_inf(const Term& w, HalfInt n) {
  if (sgn(w.c) == 0) return one(n);
  Series r = one(n);
  for (HalfInt i(0);; i += HalfInt(1)) {
    Term wi{w.c, Monomial{w.m.q + i, w.m.z}};
    if (wi.m.q > n) break;
    r = r * geometric(wi, n);
  }
  return r;
}

Series inv_poch_inf(const Param& a, HalfInt n) {
  if (a.is_zero()) return one(n);
  return inv_poch_inf(a.value(), n);
}

Series inv_poch_n(const Param& a, int count, HalfInt n) {
  if (a.is_zero()) return one(n);
  Series r = one(n);
  const Term w = a.value();
  for (int i = 0; i < count; ++i) {
    Term wi{w.c, Monomial{w.m.q + HalfInt(i), w.m.z}};
    if (wi.m.q == HalfInt(0) && wi.m.z.is_zero() && wi.c == 1)
      throw DegenerateParameter("vanishing Pochhammer factor at " + a.str());
    if (wi.m.q > n) break;
    r = r * geometric(wi, n);
  }
  return r;
}

Series inv_qpoch(int count, HalfInt n) { return inv_poch_n(Param::q_power(HalfInt(1)), count, n); }

Series inv_euler(HalfInt n) { return invert_unit(euler(n)); }

Param product_of(std::span<const Param> pts) {
  Param p(Rational(1));
  for (const Param& t : pts) p = p * t;
  return p;
}

void require_plain_points(std::span<const Param> pts, const char* what) {
  for (const Param& t : pts) {
    if (t.is_zero()) throw InvalidArgument(std::string(what) + ": point t = 0");
    if (t.d() != HalfInt(0) || t.e() != 0)
      throw InvalidArgument(std::string(what) + ": points must be plain rationals, got " + t.str());
  }
}

std::string key_of(std::span<const Param> pts, HalfInt n, const std::string& tag) {
  std::string k = tag + "|" + n.str();
  for (const Param& p : pts) k += "|" + p.str();
  return k;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, Series>& cache() {
  static std::map<std::string, Series> c;
  return c;
}

template <class F>
Series cached(const std::string& key, F&& compute) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  Series s = compute();
  std::lock_guard<std::mutex> lock(cache_mutex());
  cache().emplace(key, s);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

Series exponential_sum(const Param& z, HalfInt n) {
  if (z.d() <= HalfInt(0)) throw NonTruncatable("exponential sum needs z with positive q-shift");
  Series total(n);
  for (int m = 0;; ++m) {
    const HalfInt v = z.d() * m + HalfInt(static_cast<std::int64_t>(m) * (m - 1) / 2);
    if (v > n) break;
    Term zm = power(z, HalfInt(m));
    Term t = tmul(zm, qterm(HalfInt(static_cast<std::int64_t>(m) * (m - 1) / 2), Rational(m % 2 ? -1 : 1)));
    total += times(inv_qpoch(m, n), t, n);
  }
  return total;
}

Series exponential_product(const Param& z, HalfInt n) { return pochhammer_inf(z, n); }

Series binomial_sum(const Param& a, const Param& z, HalfInt n) {
  if (z.d() <= HalfInt(0)) throw NonTruncatable("binomial sum needs z with positive q-shift");
  Series total(n);
  for (int l = 0; z.d() * l <= n; ++l)
    total += times(pochhammer_n(a, l, n) * inv_qpoch(l, n), power(z, HalfInt(l)), n);
  return total;
}

Series binomial_product(const Param& a, const Param& z, HalfInt n) {
  return pochhammer_inf(a * z, n) * inv_poch_inf(z, n);
}

Series poch_ratio_sum(int k, const Param& t, HalfInt n) {
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  require_plain_points(std::span(&t, 1), "poch_ratio");
  Series total(n);
  const Param tq = t.qshift(HalfInt(1));
  for (int l = 0; HalfInt(l) <= n; ++l)
    total += times(inv_qpoch(l, n) * inv_poch_n(tq, l + k, n), qterm(HalfInt(l)), n);
  return total;
}

Series poch_ratio_closed(int k, const Param& t, HalfInt n) {
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  require_plain_points(std::span(&t, 1), "poch_ratio");
  Series sum(n);
  for (std::int64_t m = 0;; ++m) {
    const HalfInt e(m * (m + 1) / 2 + k * m);
    if (e > n) break;
    Term tm = power(t, HalfInt(m));
    sum.add(Monomial{e, tm.m.z}, tm.c * (m % 2 ? -1 : 1));
  }
  return sum * inv_euler(n) * inv_poch_inf(t.qshift(HalfInt(1)), n);
}

Series ff_lhs(const Term& u, HalfInt n) {
  if (u.m.q <= HalfInt(0)) throw NonTruncatable("identity needs u with positive q-valuation");
  Term ui{1 / u.c, Monomial{HalfInt(1) - u.m.q, -u.m.z}};
  return inv_poch_inf(u, n) * inv_poch_inf(ui, n);
}

Series ff_double_sum(const Term& u, HalfInt n) {
  if (u.m.q <= HalfInt(0)) throw NonTruncatable("identity needs u with positive q-valuation");
  Series sum(n);
  for (std::int64_t m = 0;; ++m) {
    const HalfInt base(m * (m + 1) / 2);
    if (base > n) break;
    const Rational sign(m % 2 ? -1 : 1);
    Term up{u.c, Monomial{u.m.q + HalfInt(m), u.m.z}};
    Term down{1 / u.c, Monomial{HalfInt(m + 1) - u.m.q, -u.m.z}};
    Series inner = geometric(up, n) + geometric(down, n) - one(n);
    sum += times(inner, qterm(base, sign), n);
  }
  return sum * pow(inv_euler(n), 2);
}

Series ff_bilateral(const Term& u, HalfInt n) {
  if (u.m.q <= HalfInt(0)) throw NonTruncatable("identity needs u with positive q-valuation");
  Series sum(n);
  for (std::int64_t m = 0;; ++m) {
    const HalfInt base(m * (m + 1) / 2);
    if (base > n) break;
    Term w{u.c, Monomial{u.m.q + HalfInt(m), u.m.z}};
    sum += times(geometric(w, n), qterm(base, Rational(m % 2 ? -1 : 1)), n);
  }
  // m = -j: 1/(1 - u q^-j) = -sum_{k>=1} (u^-1 q^j)^k
  for (std::int64_t j = 1;; ++j) {
    const HalfInt base(j * (j - 1) / 2);
    const HalfInt step = HalfInt(j) - u.m.q;
    if (step > HalfInt(0) && base + step > n) break;
    Term w{1 / u.c, Monomial{step, -u.m.z}};
    Series inner = one(n) - geometric(w, n);
    sum += times(inner, qterm(base, Rational(j % 2 ? -1 : 1)), n);
  }
  return sum * pow(inv_euler(n), 2);
}

Series length_sum(int l, HalfInt n) {
  Series s(n);
  if (!n.is_integer() && n < HalfInt(0)) return s;
  for (const Partition& p : partitions_with_length(static_cast<int>(n.twice() / 2), l))
    s.add(Monomial{HalfInt(weight(p)), {}}, Rational(1));
  return s;
}

Series length_sum_closed(int l, HalfInt n) { return times(inv_qpoch(l, n), qterm(HalfInt(l)), n); }

Series part_sum(int l, int i, const Param& t, HalfInt n) {
  if (i < 1 || i > l) throw InvalidArgument("part index must lie in 1..l");
  Series s(n);
  for (const Partition& p : partitions_with_length(static_cast<int>(n.twice() / 2), l)) {
    Term ti = power(t, HalfInt(p[i - 1]));
    s.add(Monomial{HalfInt(weight(p)), ti.m.z}, ti.c);
  }
  return s;
}

Series part_sum_closed(int l, int i, const Param& t, HalfInt n) {
  if (i < 1 || i > l) throw InvalidArgument("part index must lie in 1..l");
  Series d = inv_qpoch(i - 1, n);
  for (int j = i; j <= l; ++j) d = d * inv_poch_n(t.qshift(HalfInt(j)), 1, n);
  return times(d, tmul(t.value(), qterm(HalfInt(l))), n);
}

// ---------------------------------------------------------------------------

Series qdim_a_minus1(int k, HalfInt n) {
  const std::int64_t ak = std::abs(k);
  Series sum(n);
  for (std::int64_t m = 0;; ++m) {
    const HalfInt e = HalfInt(m * (m + 1) / 2) + HalfInt::from_twice(ak * (2 * m + 1));
    if (e > n) break;
    sum.add(Monomial{e, {}}, Rational(m % 2 ? -1 : 1));
  }
  return sum * pow(inv_euler(n), 2);
}

Series one_point_minus1(const Param& t, HalfInt n) {
  require_plain_points(std::span(&t, 1), "one_point");
  const Param q = Param::q_power(HalfInt(1));
  const Param zero = Param::zero();
  std::vector<Param> up2{zero, zero};
  std::vector<Param> lo2{q};
  Series total = qhyper(up2, lo2, q, n) * c_term(t, n);
  for (int i = 1; HalfInt(i) <= n; ++i) {
    const HalfInt qi(i);
    std::vector<Param> up{zero, zero, q};
    std::vector<Param> lo_t{t.qshift(qi), Param::q_power(qi)};
    std::vector<Param> lo_ti{t.inverse().qshift(qi), Param::q_power(qi)};
    Series plus = qhyper(up, lo_t, q, n) - one(n);
    Series minus = qhyper(up, lo_ti, q, n) - one(n);
    Series inner = times(plus, power(t, kHalf), n) - times(minus, power(t, -kHalf), n);
    Series pre = pow(inv_qpoch(i - 1, n), 2);
    total += times(pre * inner, qterm(HalfInt(i - 1)), n);
  }
  return total;
}

Series omega_numerator(const Param& x, const Param& t, HalfInt n) {
  const Param xh = x.qshift(kHalf);
  const Param x3 = x.qshift(kThreeHalves);
  const Param xt3 = (x * t).qshift(kThreeHalves);
  const Param tq = t.qshift(HalfInt(1));
  Series s = pochhammer_inf(xt3, n) * inv_poch_inf(tq, n) * inv_poch_inf(xh, n) * geometric(xh.value(), n);
  std::vector<Param> up{xh, xh};
  std::vector<Param> lo{x3, xt3};
  s = s * qhyper(up, lo, t.qshift(HalfInt(2)), n);
  return times(s, tmul(x.value(), power(tq, kHalf)), n);
}

Series omega_partition_sum(const Param& x, const Param& t, HalfInt n) {
  Series s(n);
  const Term xv = x.value();
  for_each_by_energy(n, false, [&](const Partition& p) {
    if (p.empty()) return;
    const HalfInt e = energy(p);
    Term xl = power(x, HalfInt(static_cast<std::int64_t>(p.size())));
    for (int part : p) {
      Term tt = power(t, HalfInt(part) - kHalf);
      Term c = tmul(tmul(xl, tt), qterm(e));
      if (c.m.q <= n) s.add(c.m, c.c);
    }
  });
  (void)xv;
  return s;
}

Series omega(const Param& x, const Param& y, const Param& t, HalfInt n) {
  return omega_numerator(x, t, n) * inv_poch_inf(y.qshift(kHalf), n);
}

Series generalized_one_point(const Param& x, const Param& y, const Param& t, HalfInt n) {
  require_plain_points(std::span(&t, 1), "generalized_one_point");
  Series vac = inv_poch_inf(x.qshift(kHalf), n) * inv_poch_inf(y.qshift(kHalf), n);
  return vac * c_term(t, n) + omega(x, y, t, n) - omega(y, x, t.inverse(), n);
}

Series gamma_bar(const Param& x, const Param& t1, const Param& t2, HalfInt n) {
  const Param xh = x.qshift(kHalf);
  const Param x3 = x.qshift(kThreeHalves);
  const Param x3t1 = (x * t1).qshift(kThreeHalves);
  const Param qt1 = t1.qshift(HalfInt(1));
  const Param t12 = t1 * t2;
  Series pre = pochhammer_inf(x3t1, n) * pow(geometric(xh.value(), n), 2) * inv_poch_inf(xh, n) *
               inv_poch_inf(qt1, n);
  Series sum(n);
  for (std::int64_t s = 0;; ++s) {
    const HalfInt v(3 * s + s * (s - 1) / 2);
    if (v > n) break;
    const int si = static_cast<int>(s);
    Series c = pow(pochhammer_n(xh, si, n), 3) * inv_poch_n(x3t1, si, n) * inv_qpoch(si, n) *
               pow(inv_poch_n(x3, si, n), 2);
    std::vector<Param> up{t2.inverse(), x.qshift(HalfInt(s) + kHalf), x.qshift(HalfInt(s) + kHalf)};
    std::vector<Param> lo{x.qshift(HalfInt(s) + kThreeHalves), (x * t1).qshift(HalfInt(s) + kThreeHalves)};
    c = c * qhyper(up, lo, t12.qshift(HalfInt(2)), n);
    Term z = tmul(power(t12, HalfInt(s)), qterm(v, Rational(s % 2 ? -1 : 1)));
    sum += times(c, z, n);
  }
  Term front = tmul(tmul(power(x, HalfInt(2)), qterm(HalfInt(1))), t12.value());
  return times(pre * sum, front, n);
}

Series gamma_fn(const Param& x, const Param& y, const Param& t1, const Param& t2, HalfInt n) {
  Series s = gamma_bar(x, t1, t2, n) + gamma_bar(x, t2, t1, n);
  s = s * inv_poch_inf(y.qshift(kHalf), n);
  return times(s, power(t1 * t2, -kHalf), n);
}

Series generalized_two_point(const Param& x, const Param& y, const Param& t1, const Param& t2, HalfInt n,
                             TwoPointForm form) {
  const Param pts[] = {t1, t2};
  require_plain_points(pts, "generalized_two_point");
  const Param i1 = t1.inverse(), i2 = t2.inverse();
  const Series b1 = c_term(t1, n), b2 = c_term(t2, n);
  const Series px = pochhammer_inf(x.qshift(kHalf), n);
  const Series py = pochhammer_inf(y.qshift(kHalf), n);
  const Series vac = inv_poch_inf(x.qshift(kHalf), n) * inv_poch_inf(y.qshift(kHalf), n);
  Series s = gamma_fn(x, y, t1, t2, n) + gamma_fn(y, x, i1, i2, n);
  s += omega(x, y, t1 * t2, n) + omega(y, x, i1 * i2, n);
  s += b1 * (omega(x, y, t2, n) - omega(y, x, i2, n));
  s += b2 * (omega(x, y, t1, n) - omega(y, x, i1, n));
  Series cross = omega(x, y, t1, n) * omega(y, x, i2, n);
  if (form == TwoPointForm::printed) cross += omega(x, y, i1, n) * omega(y, x, t2, n);
  else cross += omega(x, y, t2, n) * omega(y, x, i1, n);
  s -= px * py * cross;
  s += b1 * b2 * vac;
  return s;
}

namespace {

Param zinv() { return Param(Rational(1), HalfInt(0), -1, 1); }
Param zpos() { return Param(Rational(1), HalfInt(0), 1, 1); }

// Generating function sum_m z^m A^{(m)}(points).
Series a_generating(std::span<const Param> pts, HalfInt n) {
  return cached(key_of(pts, n, "agen"), [&]() -> Series {
    switch (pts.size()) {
      case 1: return generalized_one_point(zinv(), zpos(), pts[0], n);
      case 2: return generalized_two_point(zinv(), zpos(), pts[0], pts[1], n);
      default: throw InvalidArgument("closed-form generating function needs one or two points");
    }
  });
}

}  // namespace

Series a_sector(int m, std::span<const Param> points, HalfInt n) {
  if (points.empty()) return cached("qa|" + std::to_string(m) + "|" + n.str(), [&] { return qdim_a_minus1(m, n); });
  require_plain_points(points, "a_sector");
  if (points.size() <= 2) return a_generating(points, n).coeff_z(1, m);
  return cached(key_of(points, n, "atrace" + std::to_string(m)), [&] { return a_sector_trace(m, points, n); });
}

// ---------------------------------------------------------------------------

Series f_bo(std::span<const Param> points, HalfInt n) {
  const int np = static_cast<int>(points.size());
  if (np > 4) throw CapExceeded("F_bo is limited to four points");
  require_plain_points(points, "f_bo");
  return cached(key_of(points, n, "fbo"), [&]() -> Series {
    if (np == 0) return inv_euler(n);
    std::vector<int> sigma(np);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> cols(np);
    Series total(n);
    do {
      // prefix products T_0..T_n
      std::vector<Param> pref{Param(Rational(1))};
      for (int i = 0; i < np; ++i) pref.push_back(pref.back() * points[sigma[i]]);
      for (int m = 1; m <= np; ++m)
        if (pref[m].is_one() || pref[m].s() * pref[m].s() == 1)
          throw DegenerateParameter("Theta vanishes at the partial product " + pref[m].str());
      std::vector<Jet> jets;
      for (int m = 0; m < np; ++m) jets.push_back(theta_jet(pref[m], np, n));
      // entry (i, j), 1-based: jets[n - j].coeffs[j - i + 1]
      auto entry = [&](int i, int j) -> const Series* {
        const int c = j - i + 1;
        if (c < 0) return nullptr;
        return &jets[np - j].coeffs[c];
      };
      Series det(n);
      std::iota(cols.begin(), cols.end(), 1);
      do {
        int inv = 0;
        for (int a = 0; a < np; ++a)
          for (int b = a + 1; b < np; ++b)
            if (cols[a] > cols[b]) ++inv;
        Series prod = one(n);
        bool zero = false;
        for (int i = 1; i <= np && !zero; ++i) {
          const Series* e = entry(i, cols[i - 1]);
          if (!e) zero = true;
          else prod = prod * *e;
        }
        if (zero) continue;
        if (inv % 2) det -= prod;
        else det += prod;
      } while (std::next_permutation(cols.begin(), cols.end()));
      Series den = one(n);
      for (int m = 1; m <= np; ++m) den = den * theta(pref[m], n);
      total += det * invert(den);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total * inv_euler(n);
  });
}

Series level1_sector(int k, std::span<const Param> points, HalfInt n) {
  Term pre = tmul(qterm(HalfInt::from_twice(static_cast<std::int64_t>(k) * k)), power(product_of(points), HalfInt(k)));
  return times(f_bo(points, n), pre, n);
}

Series level1_sector_c(int k, std::span<const Param> points, HalfInt n) {
  const int np = static_cast<int>(points.size());
  Series total(n);
  std::vector<Param> pts(points.begin(), points.end());
  for (int mask = 0; mask < (1 << np); ++mask) {
    for (int j = 0; j < np; ++j) pts[j] = (mask >> j & 1) ? points[j].inverse() : points[j];
    Series s = level1_sector(k, pts, n);
    if (std::popcount(static_cast<unsigned>(mask)) % 2) total -= s;
    else total += s;
  }
  return total;
}

Series c_one_point_half(const Param& t, HalfInt n) {
  require_plain_points(std::span(&t, 1), "c_one_point_half");
  const Param qh = Param::q_power(kHalf);
  const Series inv_qh = inv_poch_inf(qh, n);
  const Series k = inv_qh * geometric(qterm(-kHalf), n);
  auto g = [&](const Param& u) {
    Series s = pochhammer_inf(u.qshift(kThreeHalves), n) * inv_poch_inf(u.qshift(HalfInt(1)), n);
    std::vector<Param> up{qh, qh};
    std::vector<Param> lo{Param::q_power(kThreeHalves), u.qshift(kThreeHalves)};
    s = s * qhyper(up, lo, u.qshift(HalfInt(2)), n);
    return times(s, power(u, kHalf), n);
  };
  return inv_qh * c_term(t, n) - k * g(t) + k * g(t.inverse());
}

Series c_sector_minus1(int m, std::span<const Param> points, HalfInt n) {
  const int np = static_cast<int>(points.size());
  Series total(n);
  std::vector<Param> pts(points.begin(), points.end());
  for (int mask = 0; mask < (1 << np); ++mask) {
    for (int j = 0; j < np; ++j) pts[j] = (mask >> j & 1) ? points[j].inverse() : points[j];
    Series s = a_sector(m, pts, n);
    if (std::popcount(static_cast<unsigned>(mask)) % 2) total -= s;
    else total += s;
  }
  return total;
}

Series d_sector_minus1(int m, std::span<const Param> points, HalfInt n) {
  return c_sector_minus1(m, points, n) - c_sector_minus1(m + 2, points, n);
}

// ---------------------------------------------------------------------------

namespace {

struct LevelShape {
  int rank;
  bool neutral;
};

void require_partition(const std::vector<int>& label) {
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] < 0) throw InvalidArgument("label must be a partition (nonnegative entries)");
    if (i > 0 && label[i] > label[i - 1]) throw InvalidArgument("label must be weakly decreasing");
  }
}

std::vector<int> padded(const std::vector<int>& label, int rank) {
  if (static_cast<int>(label.size()) > rank)
    throw InvalidArgument("label has more than " + std::to_string(rank) + " entries");
  std::vector<int> out = label;
  out.resize(rank, 0);
  return out;
}

// sum over the Weyl group of sign * prod_i block(k_i)
template <class Block>
Series weyl_product_sum(WeylType type, const std::vector<int>& lambda, HalfInt n, Block&& block) {
  const int l = static_cast<int>(lambda.size());
  const auto rho = weyl_rho(type, l);
  Series total(n);
  for (const WeylElement& w : weyl_group(type, l)) {
    const auto k = k_vector(lambda, w, rho);
    Series p = one(n);
    for (int i = 0; i < l; ++i) p = p * block(k[i]);
    if (w.sign < 0) total -= p;
    else total += p;
  }
  return total;
}

}  // namespace

Series qdim_closed(Algebra algebra, HalfInt level, const std::vector<int>& label, HalfInt n, QdimForm form) {
  auto qa = [&](int k) { return qdim_a_minus1(k, n); };
  const Series inv_qh = inv_poch_inf(Param::q_power(kHalf), n);
  switch (algebra) {
    case Algebra::a: {
      if (!level.is_integer() || level >= HalfInt(0)) throw InvalidArgument("a_inf q-dimensions need level -l");
      const int l = static_cast<int>(-level.to_int());
      std::vector<int> lam = padded(label, l);
      for (int i = 1; i < l; ++i)
        if (lam[i] > lam[i - 1]) throw InvalidArgument("label must be weakly decreasing");
      return weyl_product_sum(WeylType::A, lam, n, qa);
    }
    case Algebra::c: {
      if (level == -kHalf) {
        if (!label.empty() && std::any_of(label.begin(), label.end(), [](int v) { return v != 0; }))
          throw InvalidArgument("level -1/2 has only the empty label");
        return inv_qh;
      }
      if (level > HalfInt(0) && !level.is_integer()) {
        const int l = static_cast<int>((level + kHalf).to_int());
        std::vector<int> lam = padded(label, l);
        require_partition(lam);
        Series pre = inv_qh * pow(inv_euler(n), static_cast<unsigned>(l));
        if (form == QdimForm::weyl_sum) {
          const auto rho = weyl_rho(WeylType::B, l);
          Series sum(n);
          for (const WeylElement& w : weyl_group(WeylType::B, l)) {
            const auto k = k_vector(lam, w, rho);
            std::int64_t sq = 0;
            for (int v : k) sq += static_cast<std::int64_t>(v) * v;
            const HalfInt e = HalfInt::from_twice(sq);
            if (e <= n) sum.add(Monomial{e, {}}, Rational(w.sign));
          }
          return pre * sum;
        }
        std::int64_t sq = 0;
        for (int v : lam) sq += static_cast<std::int64_t>(v) * v;
        Series p = one(n);
        auto factor = [&](HalfInt e) {
          Series f = one(n);
          f.add(Monomial{e, {}}, Rational(-1));
          p = p * f;
        };
        for (int i = 1; i <= l; ++i) factor(HalfInt(lam[i - 1] + l - i) + kHalf);
        for (int i = 1; i <= l; ++i)
          for (int j = i + 1; j <= l; ++j) {
            factor(HalfInt(lam[i - 1] - lam[j - 1] + j - i));
            factor(HalfInt(lam[i - 1] + lam[j - 1] + 2 * l - i - j + 1));
          }
        return times(pre * p, qterm(HalfInt::from_twice(sq)), n);
      }
      if (level.is_integer() && level < HalfInt(0)) {
        const int l = static_cast<int>(-level.to_int());
        std::vector<int> lam = padded(label, l);
        require_partition(lam);
        return weyl_product_sum(WeylType::D, lam, n, qa);
      }
      if (level < HalfInt(0)) {
        const int l = static_cast<int>((-level - kHalf).to_int());
        std::vector<int> lam = padded(label, l);
        require_partition(lam);
        return inv_qh * weyl_product_sum(WeylType::B, lam, n, qa);
      }
      throw InvalidArgument("c_inf level " + level.str() + " is not covered");
    }
    case Algebra::d: {
      const Series fneutral = pochhammer_inf(Term{Rational(-1), Monomial{kHalf, {}}}, n);
      if (level == kHalf) {
        if (!label.empty() && std::any_of(label.begin(), label.end(), [](int v) { return v != 0; }))
          throw InvalidArgument("level 1/2 has only the empty label");
        return fneutral;
      }
      if (level.is_integer() && level < HalfInt(0)) {
        const int l = static_cast<int>(-level.to_int());
        std::vector<int> lam = padded(label, l);
        require_partition(lam);
        return weyl_product_sum(WeylType::C, lam, n, qa);
      }
      if (level < HalfInt(0)) {
        const int l = static_cast<int>((-level + kHalf).to_int());
        std::vector<int> lam = padded(label, l);
        require_partition(lam);
        return fneutral * weyl_product_sum(WeylType::B, lam, n, qa);
      }
      throw InvalidArgument("d_inf level " + level.str() + " is not covered");
    }
  }
  throw InvalidArgument("unknown algebra");
}

Series qdim_d_printed_blocks(HalfInt level, const std::vector<int>& label, HalfInt n) {
  auto qd = [&](int k) {
    if (k < 0) throw InvalidArgument("displayed level -1 d_inf block needs k >= 0");
    Series s(n);
    for (std::int64_t m = 0;; ++m) {
      const HalfInt base(m * (m + 1) / 2);
      if (base > n) break;
      const Rational sign(m % 2 ? -1 : 1);
      const HalfInt e1 = base + HalfInt::from_twice(static_cast<std::int64_t>(k) * (2 * m + 1));
      const HalfInt e2 = base + HalfInt::from_twice(static_cast<std::int64_t>(k + 2) * (2 * m + 1));
      if (e1 <= n) s.add(Monomial{e1, {}}, sign);
      if (e2 <= n) s.add(Monomial{e2, {}}, -sign);
    }
    return s * pow(inv_euler(n), 2);
  };
  if (level.is_integer() && level < HalfInt(0)) {
    const int l = static_cast<int>(-level.to_int());
    std::vector<int> lam = padded(label, l);
    require_partition(lam);
    if (l == 1) return qd(lam[0]);
    return weyl_product_sum(WeylType::C, lam, n, qd);
  }
  if (level < HalfInt(0)) {
    const int l = static_cast<int>((-level + kHalf).to_int());
    std::vector<int> lam = padded(label, l);
    require_partition(lam);
    return pochhammer_inf(Term{Rational(-1), Monomial{kHalf, {}}}, n) * weyl_product_sum(WeylType::B, lam, n, qd);
  }
  throw InvalidArgument("displayed d_inf blocks exist for levels -l and -l+1/2 only");
}

// ---------------------------------------------------------------------------

std::string DualityInstance::name() const { return algebra_name(algebra) + "[" + level.str() + "]"; }

bool DualityInstance::has_neutral() const { return static_cast<int>(factors.size()) > rank; }

DualityInstance duality_instance(Algebra algebra, HalfInt level) {
  DualityInstance inst;
  inst.algebra = algebra;
  inst.level = level;
  auto charged = [&](FockKind kind, int l) {
    inst.rank = l;
    for (int i = 0; i < l; ++i) inst.factors.push_back(make_factor(kind));
  };
  auto need_rank = [&](int l) {
    if (l < 1) throw InvalidArgument("duality instance needs rank >= 1 at level " + level.str());
    if (l > kMaxZVars) throw CapExceeded("duality rank exceeds the number of charge variables");
  };
  switch (algebra) {
    case Algebra::a: {
      if (!level.is_integer() || level >= HalfInt(0)) throw InvalidArgument("a_inf duality needs level -l");
      const int l = static_cast<int>(-level.to_int());
      need_rank(l);
      charged(FockKind::boson_pair, l);
      inst.op = OpTag::A;
      inst.weyl = WeylType::A;
      break;
    }
    case Algebra::c: {
      inst.op = OpTag::C;
      if (level > HalfInt(0) && !level.is_integer()) {
        const int l = static_cast<int>((level + kHalf).to_int());
        need_rank(l);
        charged(FockKind::fermion_pair, l);
        inst.factors.push_back(make_factor(FockKind::boson_neutral));
        inst.weyl = WeylType::B;
      } else if (level.is_integer() && level < HalfInt(0)) {
        const int l = static_cast<int>(-level.to_int());
        need_rank(l);
        charged(FockKind::boson_pair, l);
        inst.weyl = WeylType::D;
      } else if (level < HalfInt(0)) {
        const int l = static_cast<int>((-level - kHalf).to_int());
        need_rank(l);
        charged(FockKind::boson_pair, l);
        inst.factors.push_back(make_factor(FockKind::boson_neutral));
        inst.weyl = WeylType::B;
      } else {
        throw InvalidArgument("no c_inf duality at level " + level.str());
      }
      break;
    }
    case Algebra::d: {
      inst.op = OpTag::D;
      if (level.is_integer() && level < HalfInt(0)) {
        const int l = static_cast<int>(-level.to_int());
        need_rank(l);
        charged(FockKind::boson_pair, l);
        inst.weyl = WeylType::C;
      } else if (level < HalfInt(0)) {
        const int l = static_cast<int>((-level + kHalf).to_int());
        need_rank(l);
        charged(FockKind::boson_pair, l);
        inst.factors.push_back(make_factor(FockKind::fermion_neutral));
        inst.weyl = WeylType::B;
      } else {
        throw InvalidArgument("no d_inf duality at level " + level.str());
      }
      break;
    }
  }
  inst.rho = weyl_rho(inst.weyl, inst.rank);
  return inst;
}

std::vector<int> normalize_label(const DualityInstance& inst, const std::vector<int>& label) {
  std::vector<int> lam = padded(label, inst.rank);
  if (inst.algebra == Algebra::a) {
    for (int i = 1; i < inst.rank; ++i)
      if (lam[i] > lam[i - 1]) throw InvalidArgument("label must be weakly decreasing");
  } else {
    require_partition(lam);
  }
  return lam;
}

namespace {

Series charged_block(const DualityInstance& inst, int k, std::span<const Param> pts, HalfInt n) {
  if (inst.algebra == Algebra::a) return a_sector(k, pts, n);
  if (inst.factors.front().kind == FockKind::fermion_pair) return level1_sector_c(k, pts, n);
  return c_sector_minus1(k, pts, n);
}

Series neutral_block(const DualityInstance& inst, std::span<const Param> pts, HalfInt n) {
  const FockKind kind = inst.factors.back().kind;
  if (kind == FockKind::boson_neutral && pts.size() == 1) return c_one_point_half(pts[0], n);
  if (pts.empty()) {
    if (kind == FockKind::boson_neutral) return inv_poch_inf(Param::q_power(kHalf), n);
    return pochhammer_inf(Term{Rational(-1), Monomial{kHalf, {}}}, n);
  }
  return neutral_trace(kind, pts, n);
}

std::vector<Param> subset(std::span<const Param> pts, int mask) {
  std::vector<Param> out;
  for (int j = 0; j < static_cast<int>(pts.size()); ++j)
    if (mask >> j & 1) out.push_back(pts[j]);
  return out;
}

}  // namespace

Series duality_reduce(const DualityInstance& inst, const std::vector<int>& label, std::span<const Param> points,
                      HalfInt n, ReductionMode mode) {
  const std::vector<int> lam = normalize_label(inst, label);
  require_plain_points(points, "duality_reduce");
  const int np = static_cast<int>(points.size());
  if (np > 4) throw CapExceeded("duality reduction is limited to four points");
  const int l = inst.rank;
  const bool neutral = inst.has_neutral();
  const int nf = l + (neutral ? 1 : 0);
  const int full = (1 << np) - 1;

  std::map<std::pair<int, int>, Series> memo;  // (k, mask)
  auto block = [&](int k, int mask) -> const Series& {
    auto it = memo.find({k, mask});
    if (it != memo.end()) return it->second;
    return memo.emplace(std::make_pair(k, mask), charged_block(inst, k, subset(points, mask), n)).first->second;
  };
  std::map<int, Series> nmemo;
  auto nblock = [&](int mask) -> const Series& {
    auto it = nmemo.find(mask);
    if (it != nmemo.end()) return it->second;
    return nmemo.emplace(mask, neutral_block(inst, subset(points, mask), n)).first->second;
  };

  Series total(n);
  for (const WeylElement& w : weyl_group(inst.weyl, l)) {
    const auto k = k_vector(lam, w, inst.rho);
    Series term(n);
    if (mode == ReductionMode::literal) {
      term = one(n);
      for (int i = 0; i < l; ++i) term = term * block(k[i], full);
      if (neutral) term = term * nblock(full);
    } else {
      std::vector<int> assign(np, 0);
      while (true) {
        std::vector<int> masks(nf, 0);
        for (int j = 0; j < np; ++j) masks[assign[j]] |= 1 << j;
        Series p = one(n);
        for (int i = 0; i < l; ++i) p = p * block(k[i], masks[i]);
        if (neutral) p = p * nblock(masks[l]);
        term += p;
        int j = 0;
        while (j < np && ++assign[j] == nf) assign[j++] = 0;
        if (j == np) break;
      }
    }
    if (w.sign < 0) total -= term;
    else total += term;
  }
  return total;
}

Series coeff_zvec(const Series& s, const std::vector<int>& k) {
  Series out(s.truncation());
  for (const auto& [m, c] : s.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < k.size() && match; ++i)
      if (m.z[static_cast<int>(i) + 1] != k[i]) match = false;
    if (!match) continue;
    Monomial r = m;
    for (std::size_t i = 0; i < k.size(); ++i) r.z[static_cast<int>(i) + 1] = 0;
    out.add(r, c);
  }
  return out;
}

Series duality_extract(const DualityInstance& inst, const std::vector<int>& label, std::span<const Param> points,
                       HalfInt n) {
  const std::vector<int> lam = normalize_label(inst, label);
  const int l = inst.rank;
  const auto group = weyl_group(inst.weyl, l);
  ZWindow window(l, {0, 0});
  bool first = true;
  for (const WeylElement& w : group) {
    const auto k = k_vector(lam, w, inst.rho);
    for (int i = 0; i < l; ++i) {
      if (first) window[i] = {k[i], k[i]};
      window[i].first = std::min(window[i].first, k[i]);
      window[i].second = std::max(window[i].second, k[i]);
    }
    first = false;
  }
  const Series trace = duality_trace(inst.factors, inst.op, points, n, &window);
  Series total(n);
  for (const WeylElement& w : group) {
    Series c = coeff_zvec(trace, k_vector(lam, w, inst.rho));
    if (w.sign < 0) total -= c;
    else total += c;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

// t_1 * prod_{i in P} t_i^{eps_i} followed by the points outside P (P within 1..n-1).
std::vector<Param> merged(std::span<const Param> pts, int mask, int eps_mask) {
  std::vector<Param> out{pts[0]};
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (mask >> (i - 1) & 1) out[0] = out[0] * ((eps_mask >> (i - 1) & 1) ? pts[i].inverse() : pts[i]);
    else out.push_back(pts[i]);
  }
  return out;
}

}  // namespace

Series qdiff_lhs(Algebra algebra, std::span<const Param> points, HalfInt n) {
  if (points.empty()) throw InvalidArgument("q-difference equations need at least one point");
  require_plain_points(points, "qdiff");
  std::vector<Param> pts(points.begin(), points.end());
  pts[0] = pts[0].qshift(HalfInt(1));
  switch (algebra) {
    case Algebra::a: return resummed_a_sector(0, pts, n);
    case Algebra::c: return resummed_neutral(FockKind::boson_neutral, pts, n);
    default: throw InvalidArgument("q-difference equations are stated for a_inf and c_inf");
  }
}

Series qdiff_rhs(Algebra algebra, std::span<const Param> points, HalfInt n, QdiffForm form) {
  if (points.empty()) throw InvalidArgument("q-difference equations need at least one point");
  require_plain_points(points, "qdiff");
  const int rest = static_cast<int>(points.size()) - 1;
  Series total(n);
  for (int mask = 0; mask < (1 << rest); ++mask) {
    const int s = std::popcount(static_cast<unsigned>(mask));
    if (algebra == Algebra::a) {
      std::vector<Param> pts = merged(points, mask, 0);
      Series f = form == QdiffForm::printed ? a_sector_trace(0, pts, n) : a_sector_trace(-1, pts, n);
      const bool negative = form == QdiffForm::printed ? (s + 1) % 2 != 0 : s % 2 != 0;
      if (negative) total -= f;
      else total += f;
    } else if (algebra == Algebra::c) {
      for (int eps = 0; eps < (1 << rest); ++eps) {
        if ((eps & ~mask) != 0) continue;
        const int neg = std::popcount(static_cast<unsigned>(eps));
        std::vector<Param> pts = merged(points, mask, eps);
        Series f = neutral_trace(FockKind::boson_neutral, pts, n);
        if ((s + neg) % 2) total -= f;
        else total += f;
      }
    } else {
      throw InvalidArgument("q-difference equations are stated for a_inf and c_inf");
    }
  }
  return total;
}

Series qdiff_residual(Algebra algebra, std::span<const Param> points, HalfInt n, QdiffForm form) {
  return qdiff_lhs(algebra, points, n) - qdiff_rhs(algebra, points, n, form);
}

}  // namespace bocorr
