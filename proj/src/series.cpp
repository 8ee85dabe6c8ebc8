#include "bocorr/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "bocorr/errors.hpp"

namespace bocorr {

ZExp ZExp::var(int index, std::int32_t power) {
  if (index < 1 || index > kMaxZVars) throw InvalidArgument("z-variable index out of range");
  ZExp z;
  z[index] = power;
  return z;
}

bool ZExp::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](std::int32_t x) { return x == 0; });
}

ZExp ZExp::operator+(const ZExp& o) const {
  ZExp r;
  for (int i = 0; i < kMaxZVars; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

ZExp ZExp::operator-() const {
  ZExp r;
  for (int i = 0; i < kMaxZVars; ++i) r.e[i] = -e[i];
  return r;
}

ZExp ZExp::operator*(std::int32_t k) const {
  ZExp r;
  for (int i = 0; i < kMaxZVars; ++i) r.e[i] = e[i] * k;
  return r;
}

namespace {

ZExp lowest_z() {
  ZExp z;
  z.e.fill(std::numeric_limits<std::int32_t>::min());
  return z;
}

void erase_zeros(Series::Map& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (sgn(it->second) == 0) it = m.erase(it);
    else ++it;
  }
}

}  // namespace

Series Series::constant(const Rational& c, HalfInt truncation) {
  return monomial(c, HalfInt(0), truncation);
}

Series Series::term(const Term& t, HalfInt truncation) {
  Series s(truncation);
  s.add(t.m, t.c);
  return s;
}

Series Series::monomial(const Rational& c, HalfInt qexp, HalfInt truncation, ZExp z) {
  return term(Term{c, Monomial{qexp, z}}, truncation);
}

std::optional<HalfInt> Series::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.q;
}

HalfInt Series::min_qexp() const {
  auto v = valuation();
  return v ? *v : trunc_ + HalfInt::half();
}

Rational Series::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Series::add(const Monomial& m, const Rational& c) {
  if (m.q > trunc_ || sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Series Series::truncate(HalfInt n) const {
  Series r(std::min(n, trunc_));
  for (const auto& [m, c] : terms_) {
    if (m.q > r.trunc_) break;
    r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

Series Series::coeff_z(int var, std::int32_t m) const {
  if (var < 1 || var > kMaxZVars) throw InvalidArgument("z-variable index out of range");
  Series r(trunc_);
  for (const auto& [mono, c] : terms_) {
    if (mono.z[var] != m) continue;
    Monomial k = mono;
    k.z[var] = 0;
    r.terms_.emplace(k, c);
  }
  return r;
}

Series Series::window_z(int var, std::int32_t lo, std::int32_t hi) const {
  Series r(trunc_);
  for (const auto& [mono, c] : terms_)
    if (mono.z[var] >= lo && mono.z[var] <= hi) r.terms_.emplace_hint(r.terms_.end(), mono, c);
  return r;
}

Series Series::times(const Term& t) const {
  Series r(trunc_ + t.m.q);
  if (sgn(t.c) == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), Monomial{m.q + t.m.q, m.z + t.m.z}, c * t.c);
  return r;
}

Series Series::operator-() const {
  Series r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Series& Series::operator+=(const Series& o) {
  if (o.trunc_ < trunc_) *this = truncate(o.trunc_);
  for (const auto& [m, c] : o.terms_) {
    if (m.q > trunc_) break;
    add(m, c);
  }
  return *this;
}

Series& Series::operator-=(const Series& o) {
  if (o.trunc_ < trunc_) *this = truncate(o.trunc_);
  for (const auto& [m, c] : o.terms_) {
    if (m.q > trunc_) break;
    add(m, -c);
  }
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  HalfInt va = std::min(a.min_qexp(), HalfInt(0));
  HalfInt vb = std::min(b.min_qexp(), HalfInt(0));
  Series r(std::min(a.truncation() + vb, b.truncation() + va));
  if (a.is_zero() || b.is_zero()) return r;
  const HalfInt n = r.truncation();
  const HalfInt bmin = *b.valuation();
  Series::Map acc;
  Rational prod;
  for (const auto& [ma, ca] : a.terms()) {
    if (ma.q + bmin > n) break;
    for (const auto& [mb, cb] : b.terms()) {
      HalfInt q = ma.q + mb.q;
      if (q > n) break;
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(Monomial{q, ma.z + mb.z}, prod);
      if (!inserted) it->second += prod;
    }
  }
  erase_zeros(acc);
  Series out(n);
  for (auto& [m, c] : acc) out.add(m, c);
  return out;
}

Series mul(const Series& a, const Series& b) { return a * b; }

Series pow(const Series& a, unsigned k) {
  Series result = Series::constant(Rational(1), a.truncation());
  Series base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

Series invert(const Series& a) {
  if (a.is_zero()) throw NotInvertible("zero series is not invertible");
  const HalfInt v = *a.valuation();
  auto first = a.terms().begin();
  auto second = std::next(first);
  if (second != a.terms().end() && second->first.q == v)
    throw NotInvertible("lowest q-layer has more than one monomial");
  const Rational lead_c = first->second;
  const ZExp lead_z = first->first.z;
  const HalfInt m = a.truncation() - v;  // precision of a / lead

  // h = a / lead - 1
  std::vector<std::pair<Monomial, Rational>> h;
  for (auto it = second; it != a.terms().end(); ++it)
    h.emplace_back(Monomial{it->first.q - v, it->first.z + (-lead_z)}, it->second / lead_c);

  Series::Map b;
  b.emplace(Monomial{HalfInt(0), ZExp{}}, Rational(1));
  Rational prod;
  for (HalfInt e = HalfInt::half(); e <= m; e += HalfInt::half()) {
    Series::Map layer;
    for (const auto& [mh, ch] : h) {
      if (mh.q > e) break;
      const HalfInt want = e - mh.q;
      for (auto it = b.lower_bound(Monomial{want, lowest_z()}); it != b.end() && it->first.q == want; ++it) {
        mpq_mul(prod.get_mpq_t(), ch.get_mpq_t(), it->second.get_mpq_t());
        auto [jt, inserted] = layer.try_emplace(Monomial{e, it->first.z + mh.z}, -prod);
        if (!inserted) jt->second -= prod;
      }
    }
    for (auto& [mono, c] : layer)
      if (sgn(c) != 0) b.emplace_hint(b.end(), mono, c);
  }

  const Rational inv_c = 1 / lead_c;
  Series r(m - v);
  for (const auto& [mono, c] : b) r.add(Monomial{mono.q - v, mono.z + (-lead_z)}, c * inv_c);
  return r;
}

Series invert_unit(const Series& a) {
  const Monomial one{HalfInt(0), ZExp{}};
  auto v = a.valuation();
  if (!v || *v != HalfInt(0) || sgn(a.coeff(one)) == 0)
    throw DegenerateParameter("division by a series with vanishing constant layer");
  auto it = a.terms().begin();
  if (std::next(it) != a.terms().end() && std::next(it)->first.q == HalfInt(0))
    throw DegenerateParameter("constant layer of divisor depends on z");
  return invert(a);
}

std::optional<Monomial> first_difference(const Series& a, const Series& b) {
  const HalfInt n = std::min(a.truncation(), b.truncation());
  auto ia = a.terms().begin(), ib = b.terms().begin();
  const auto ea = a.terms().end(), eb = b.terms().end();
  while (true) {
    bool da = ia == ea || ia->first.q > n;
    bool db = ib == eb || ib->first.q > n;
    if (da && db) return std::nullopt;
    if (db || (!da && ia->first < ib->first)) return ia->first;
    if (da || ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
}

bool agree(const Series& a, const Series& b) { return !first_difference(a, b).has_value(); }

std::string monomial_str(const Monomial& m) {
  std::ostringstream os;
  bool any = false;
  if (m.q != HalfInt(0)) {
    os << "q^" << (m.q.is_integer() ? m.q.str() : "(" + m.q.str() + ")");
    any = true;
  }
  for (int i = 1; i <= kMaxZVars; ++i) {
    if (m.z[i] == 0) continue;
    if (any) os << '*';
    os << 'z' << i;
    if (m.z[i] != 1) os << '^' << (m.z[i] < 0 ? "(" + std::to_string(m.z[i]) + ")" : std::to_string(m.z[i]));
    any = true;
  }
  return any ? os.str() : "1";
}

std::string Series::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_str(m);
    Rational mag = abs(c);
    os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
    if (mono == "1") os << to_string(mag);
    else if (mag != 1) os << to_string(mag) << '*' << mono;
    else os << mono;
    first = false;
  }
  if (first) os << '0';
  HalfInt next = trunc_ + HalfInt::half();
  os << " + O(q^" << (next.is_integer() ? next.str() : "(" + next.str() + ")") << ')';
  return os.str();
}

}  // namespace bocorr
