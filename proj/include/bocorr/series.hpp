#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "bocorr/halfint.hpp"
#include "bocorr/rational.hpp"

namespace bocorr {

inline constexpr int kMaxZVars = 6;

// Exponent vector over the formal variables z_1..z_6.
struct ZExp {
  std::array<std::int32_t, kMaxZVars> e{};

  static ZExp var(int index, std::int32_t power = 1);  // index is 1-based
  std::int32_t operator[](int index) const { return e[index - 1]; }
  std::int32_t& operator[](int index) { return e[index - 1]; }
  bool is_zero() const;
  ZExp operator+(const ZExp& o) const;
  ZExp operator-() const;
  ZExp operator*(std::int32_t k) const;
  auto operator<=>(const ZExp&) const = default;
};

struct Monomial {
  HalfInt q;
  ZExp z;
  auto operator<=>(const Monomial&) const = default;
};

// c * q^m.q * z^m.z, exact.
struct Term {
  Rational c;
  Monomial m;
};

// Truncated formal Laurent series in q^(1/2) with Laurent-polynomial
// coefficients in z_1..z_6. Known exactly for q-exponents <= truncation.
class Series {
 public:
  using Map = std::map<Monomial, Rational>;

  explicit Series(HalfInt truncation = HalfInt(0)) : trunc_(truncation) {}

  static Series constant(const Rational& c, HalfInt truncation);
  static Series term(const Term& t, HalfInt truncation);
  static Series monomial(const Rational& c, HalfInt qexp, HalfInt truncation, ZExp z = {});

  HalfInt truncation() const { return trunc_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Lowest q-exponent carrying a nonzero coefficient.
  std::optional<HalfInt> valuation() const;
  // valuation(), or truncation + 1/2 for the zero series.
  HalfInt min_qexp() const;

  Rational coeff(const Monomial& m) const;
  Rational coeff_q(HalfInt qexp) const { return coeff(Monomial{qexp, {}}); }
  // Adds c to the coefficient of m; ignored above the truncation.
  void add(const Monomial& m, const Rational& c);

  Series truncate(HalfInt n) const;
  // Coefficient of z_var^m, as a series in q and the remaining variables.
  Series coeff_z(int var, std::int32_t m) const;
  // Keeps terms whose z_var exponent lies in [lo, hi].
  Series window_z(int var, std::int32_t lo, std::int32_t hi) const;

  // Exact multiplication by a monomial term; the truncation shifts with it.
  Series times(const Term& t) const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Rational& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend Series operator*(const Series& a, const Series& b);

  // Exact equality of truncation and term map.
  bool operator==(const Series& o) const { return trunc_ == o.trunc_ && terms_ == o.terms_; }

  std::string str() const;

 private:
  HalfInt trunc_;
  Map terms_;
};

Series mul(const Series& a, const Series& b);
Series pow(const Series& a, unsigned k);
// Inverse of a series whose lowest q-layer is a single monomial.
// The result is known up to truncation - 2*valuation. Throws NotInvertible.
Series invert(const Series& a);
// Inverse of a series whose q^0 z^0 coefficient is nonzero and whose q^0 layer
// has no other monomial. Throws DegenerateParameter otherwise.
Series invert_unit(const Series& a);

// First q-exponent where a and b differ, comparing up to min truncation.
std::optional<Monomial> first_difference(const Series& a, const Series& b);
bool agree(const Series& a, const Series& b);

std::string monomial_str(const Monomial& m);

}  // namespace bocorr
