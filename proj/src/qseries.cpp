#include "bocorr/qseries.hpp"

#include <sstream>

#include "bocorr/errors.hpp"

namespace bocorr {

Param::Param(Rational s, HalfInt d, int e, int zvar) : s_(std::move(s)), d_(d), e_(e), zvar_(zvar) {
  s_.canonicalize();
  if (sgn(s_) == 0) throw InvalidArgument("parameter sign/magnitude s must be nonzero; use Param::zero()");
  if (d_ < HalfInt(0)) throw InvalidArgument("parameter q-shift must be nonnegative");
  if (zvar_ < 1 || zvar_ > kMaxZVars) throw InvalidArgument("z-variable index out of range");
  if (e_ == 0) zvar_ = 1;
}

Param Param::zero() {
  Param p;
  p.zero_ = true;
  return p;
}

Param Param::operator*(const Param& o) const {
  if (zero_ || o.zero_) return zero();
  if (e_ != 0 && o.e_ != 0 && zvar_ != o.zvar_) throw InvalidArgument("product of parameters in different z-variables");
  int var = e_ != 0 ? zvar_ : o.zvar_;
  return Param(s_ * o.s_, d_ + o.d_, e_ + o.e_, var);
}

Param Param::inverse() const {
  if (zero_) throw InvalidArgument("inverse of the zero parameter");
  return Param(1 / s_, -d_, -e_, zvar_);
}

Param Param::qshift(HalfInt k) const {
  if (zero_) return *this;
  return Param(s_, d_ + k, e_, zvar_);
}

Term Param::value() const {
  if (zero_) return Term{Rational(0), Monomial{}};
  return Term{s_ * s_, Monomial{d_, e_ != 0 ? ZExp::var(zvar_, e_) : ZExp{}}};
}

bool Param::is_one() const { return !zero_ && s_ * s_ == 1 && d_ == HalfInt(0) && e_ == 0; }

bool Param::operator==(const Param& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  return s_ == o.s_ && d_ == o.d_ && e_ == o.e_ && (e_ == 0 || zvar_ == o.zvar_);
}

std::string Param::str() const {
  if (zero_) return "0";
  std::string out = to_string(s_);
  if (d_ != HalfInt(0) || e_ != 0) out += "@" + d_.str();
  if (e_ != 0) out += "@" + std::to_string(e_) + (zvar_ != 1 ? "#" + std::to_string(zvar_) : "");
  return out;
}

Param Param::parse(std::string_view text) {
  if (text == "0") return zero();
  std::vector<std::string_view> parts;
  while (true) {
    auto at = text.find('@');
    parts.push_back(text.substr(0, at));
    if (at == std::string_view::npos) break;
    text.remove_prefix(at + 1);
  }
  if (parts.size() > 3) throw ParseError("too many '@' fields in parameter");
  Rational s = parse_rational(parts[0]);
  HalfInt d = parts.size() > 1 ? HalfInt::parse(parts[1]) : HalfInt(0);
  int e = 0, var = 1;
  if (parts.size() > 2) {
    std::string_view ez = parts[2];
    auto hash = ez.find('#');
    e = static_cast<int>(HalfInt::parse(ez.substr(0, hash)).to_int());
    if (hash != std::string_view::npos) var = static_cast<int>(HalfInt::parse(ez.substr(hash + 1)).to_int());
  }
  if (sgn(s) == 0) throw ParseError("parameter s must be nonzero");
  if (d < HalfInt(0)) throw ParseError("parameter q-shift must be nonnegative");
  return Param(s, d, e, var);
}

Term power(const Param& p, HalfInt r) {
  if (p.is_zero()) throw IllegalPower("power of the zero parameter");
  HalfInt dq;
  if (!try_mul(p.d(), r, dq)) throw IllegalPower("q-exponent of " + p.str() + "^" + r.str() + " is not in Z/2");
  std::int64_t ez2 = static_cast<std::int64_t>(p.e()) * r.twice();
  if (ez2 % 2 != 0) throw IllegalPower("z-exponent of " + p.str() + "^" + r.str() + " is not integral");
  ZExp z = p.e() != 0 ? ZExp::var(p.zvar(), static_cast<std::int32_t>(ez2 / 2)) : ZExp{};
  return Term{pow(p.s(), static_cast<long>(r.twice())), Monomial{dq, z}};
}

Series geometric(const Term& w, HalfInt n) {
  Series r(n);
  if (sgn(w.c) == 0) {
    r.add(Monomial{}, Rational(1));
    return r;
  }
  const HalfInt v = w.m.q;
  if (v > HalfInt(0)) {
    Rational c(1);
    ZExp z{};
    for (HalfInt q(0); q <= n; q += v) {
      r.add(Monomial{q, z}, c);
      c *= w.c;
      z = z + w.m.z;
    }
    return r;
  }
  if (v == HalfInt(0)) {
    if (!w.m.z.is_zero()) throw NonTruncatable("1/(1 - w) with w of valuation 0 depending on z");
    if (w.c == 1) throw DegenerateParameter("1/(1 - w) at w = 1");
    r.add(Monomial{}, 1 / (1 - w.c));
    return r;
  }
  // 1/(1 - w) = -sum_{k>=1} w^(-k)
  const Rational ic = 1 / w.c;
  Rational c = -ic;
  ZExp z = -w.m.z;
  for (HalfInt q = -v; q <= n; q += -v) {
    r.add(Monomial{q, z}, c);
    c *= ic;
    z = z + (-w.m.z);
  }
  return r;
}

Series c_term(const Param& t, HalfInt n) {
  if (t.is_zero()) throw InvalidArgument("central term at t = 0");
  if (t.d() == HalfInt(0)) {
    if (t.e() != 0) throw NonTruncatable("central term at a z-dependent point without q-shift");
    if (t.s() * t.s() == 1) throw DegenerateParameter("central term t^(1/2)/(1-t) at t = 1");
    return Series::constant(t.s() / (1 - t.s() * t.s()), n);
  }
  Term root = power(t, HalfInt::half());
  return geometric(t.value(), n).times(root).truncate(n);
}

Series pochhammer_n(const Term& w, int count, HalfInt n) {
  Series f = Series::constant(Rational(1), n);
  for (int i = 0; i < count; ++i) {
    Term wi{w.c, Monomial{w.m.q + HalfInt(i), w.m.z}};
    if (wi.m.q > n) break;
    f -= f.times(wi);
  }
  return f;
}

Series pochhammer_inf(const Term& w, HalfInt n) {
  if (w.m.q <= HalfInt(0)) throw NonTruncatable("(a)_inf requires a positive q-shift");
  Series f = Series::constant(Rational(1), n);
  for (HalfInt q = w.m.q; q <= n; q += HalfInt(1)) f -= f.times(Term{w.c, Monomial{q, w.m.z}});
  return f;
}

Series pochhammer_n(const Param& a, int count, HalfInt n) {
  if (a.is_zero()) return Series::constant(Rational(1), n);
  return pochhammer_n(a.value(), count, n);
}

Series pochhammer_inf(const Param& a, HalfInt n) {
  if (a.is_zero()) return Series::constant(Rational(1), n);
  if (a.d() <= HalfInt(0)) throw NonTruncatable("(a)_inf requires a positive q-shift, got " + a.str());
  return pochhammer_inf(a.value(), n);
}

Series euler(HalfInt n) { return pochhammer_inf(Param::q_power(HalfInt(1)), n); }

namespace {

Series factor_one_minus(const Term& w, HalfInt n) {
  Series f = Series::constant(Rational(1), n);
  f.add(w.m, -w.c);
  return f;
}

Series inverse_one_minus(const Term& w, HalfInt n) {
  if (w.m.q == HalfInt(0) && !w.m.z.is_zero())
    throw DegenerateParameter("lower parameter factor with z-dependent constant layer");
  return geometric(w, n);
}

}  // namespace

Series qhyper(std::span<const Param> upper, std::span<const Param> lower, const Param& z, HalfInt n) {
  const std::int64_t p = 1 + static_cast<std::int64_t>(lower.size()) - static_cast<std::int64_t>(upper.size());
  Series total = Series::constant(Rational(1), n);
  if (z.is_zero()) return total;
  const HalfInt dz = z.d();
  if (p < 0 || (p == 0 && dz == HalfInt(0)))
    throw NonTruncatable("hypergeometric series has no growing q-valuation");
  // valuation bound of the m-th term: m dz + p m(m-1)/2, nondecreasing in m
  auto bound = [&](std::int64_t m) { return dz * m + HalfInt(p * m * (m - 1) / 2); };
  const Term zt = z.value();
  Series term = Series::constant(Rational(1), n);
  for (std::int64_t m = 0; bound(m + 1) <= n; ++m) {
    for (const Param& a : upper) {
      if (a.is_zero()) continue;
      Term w = a.value();
      w.m.q += HalfInt(m);
      term = term * factor_one_minus(w, n);
    }
    for (const Param& b : lower) {
      if (b.is_zero()) continue;
      Term w = b.value();
      w.m.q += HalfInt(m);
      term = term * inverse_one_minus(w, n);
    }
    term = term * geometric(Term{Rational(1), Monomial{HalfInt(m + 1), {}}}, n);
    const Rational sign(p % 2 != 0 ? -1 : 1);
    term = term.times(Term{zt.c * sign, Monomial{zt.m.q + HalfInt(p * m), zt.m.z}}).truncate(n);
    total += term;
  }
  return total;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  const int k = std::min(a.order(), b.order());
  Jet r;
  for (int i = 0; i <= k; ++i) {
    Series s = a.coeffs[i] * b.coeffs[0];
    for (int j = 1; j <= i; ++j) s += a.coeffs[i - j] * b.coeffs[j];
    r.coeffs.push_back(std::move(s));
  }
  return r;
}

namespace {

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// J <- J * (1 - w e^(sign*eps)).
void mul_exp_factor(Jet& jet, const Term& w, int sign) {
  const int order = jet.order();
  std::vector<Series> out;
  out.reserve(order + 1);
  for (int k = 0; k <= order; ++k) {
    Series s = jet.coeffs[k];
    for (int j = 0; j <= k; ++j) {
      Rational c = w.c / factorial(j);
      if (sign < 0 && j % 2 == 1) c = -c;
      s -= jet.coeffs[k - j].times(Term{c, w.m});
    }
    out.push_back(std::move(s));
  }
  jet.coeffs = std::move(out);
}

}  // namespace

Jet theta_jet(const Param& t, int order, HalfInt n) {
  if (order < 0) throw InvalidArgument("jet order must be nonnegative");
  if (t.is_zero()) throw InvalidArgument("theta at t = 0");
  if (t.d() != HalfInt(0)) throw NonTruncatable("theta requires a point without q-shift");
  const Term up = power(t, HalfInt::half());
  const Term down = power(t, -HalfInt::half());
  Jet jet;
  for (int k = 0; k <= order; ++k) {
    Rational half_k = pow(Rational(1, 2), k);
    Rational c_up = up.c * half_k / factorial(k);
    Rational c_down = -down.c * (k % 2 == 0 ? half_k : -half_k) / factorial(k);
    Series s(n);
    s.add(up.m, c_up);
    s.add(down.m, c_down);
    jet.coeffs.push_back(std::move(s));
  }
  const Term tv = t.value();
  const Term ti = t.inverse().value();
  for (HalfInt q(1); q <= n; q += HalfInt(1)) {
    mul_exp_factor(jet, Term{tv.c, Monomial{q, tv.m.z}}, +1);
    mul_exp_factor(jet, Term{ti.c, Monomial{q, ti.m.z}}, -1);
  }
  Series inv = invert(euler(n));
  Series inv2 = inv * inv;
  for (auto& c : jet.coeffs) c = c * inv2;
  return jet;
}

Series theta(const Param& t, HalfInt n) { return theta_jet(t, 0, n).coeffs[0]; }

Series theta_derivative(const Param& t, int k, HalfInt n) {
  return theta_jet(t, k, n).coeffs[k] * factorial(k);
}

}  // namespace bocorr
