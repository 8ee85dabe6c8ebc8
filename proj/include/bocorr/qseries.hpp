#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bocorr/series.hpp"

namespace bocorr {

// The value s^2 * q^d * z_var^e. The hypergeometric parameter 0 is the
// distinguished Param::zero().
class Param {
 public:
  Param() = default;
  Param(Rational s, HalfInt d = HalfInt(0), int e = 0, int zvar = 1);

  static Param zero();
  static Param q_power(HalfInt d) { return Param(Rational(1), d); }
  static Param z_var(int var, int e = 1) { return Param(Rational(1), HalfInt(0), e, var); }

  const Rational& s() const { return s_; }
  HalfInt d() const { return d_; }
  int e() const { return e_; }
  int zvar() const { return zvar_; }
  bool is_zero() const { return zero_; }

  Param operator*(const Param& o) const;
  Param inverse() const;
  Param qshift(HalfInt k) const;
  // Value as a single term s^2 q^d z^e.
  Term value() const;
  // True when the value is 1 (s^2 = 1, no q, no z).
  bool is_one() const;

  std::string str() const;
  static Param parse(std::string_view text);  // "s", "s@d" or "s@d@e"

  bool operator==(const Param& o) const;

 private:
  Rational s_{1};
  HalfInt d_{0};
  int e_ = 0;
  int zvar_ = 1;
  bool zero_ = false;
};

// p^r = s^(2r) q^(d r) z^(e r). Throws IllegalPower unless d r in (1/2)Z and e r in Z.
Term power(const Param& p, HalfInt r);

// 1/(1 - w) expanded to order n. Positive valuation expands in w, zero
// valuation requires a pure constant w != 1, negative valuation expands in 1/w.
Series geometric(const Term& w, HalfInt n);

// t^(1/2)/(1 - t), the central coefficient.
Series c_term(const Param& t, HalfInt n);

Series pochhammer_n(const Param& a, int count, HalfInt n);
// Requires d > 0.
Series pochhammer_inf(const Param& a, HalfInt n);
// Same products for an arbitrary monomial value w (e.g. -q^(1/2)).
Series pochhammer_n(const Term& w, int count, HalfInt n);
Series pochhammer_inf(const Term& w, HalfInt n);

// rPhis(a; b; z).
Series qhyper(std::span<const Param> upper, std::span<const Param> lower, const Param& z, HalfInt n);

// Truncated jet in eps; coeffs[k] is (t d/dt)^k f / k! under t -> t e^eps.
struct Jet {
  std::vector<Series> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

Jet jet_mul(const Jet& a, const Jet& b);

// Theta(t) = (t^(1/2) - t^(-1/2)) (q)_inf^(-2) (qt)_inf (q/t)_inf.
Series theta(const Param& t, HalfInt n);
Jet theta_jet(const Param& t, int order, HalfInt n);
// (t d/dt)^k Theta(t) (not divided by k!).
Series theta_derivative(const Param& t, int k, HalfInt n);

// (q)_inf, used pervasively.
Series euler(HalfInt n);

}  // namespace bocorr
