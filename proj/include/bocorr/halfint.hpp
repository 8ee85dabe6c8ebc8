#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bocorr {

// Element of (1/2)Z, stored as its double.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(std::int64_t n) : twice_(2 * n) {}  // NOLINT(implicit)

  static constexpr HalfInt from_twice(std::int64_t t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }
  static constexpr HalfInt half() { return from_twice(1); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  // Integer value; requires is_integer().
  std::int64_t to_int() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt operator*(std::int64_t k) const { return from_twice(twice_ * k); }
  constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;
  static HalfInt parse(std::string_view text);

 private:
  std::int64_t twice_ = 0;
};

// a*b when it lies in (1/2)Z; returns false otherwise.
bool try_mul(HalfInt a, HalfInt b, HalfInt& out);

}  // namespace bocorr
