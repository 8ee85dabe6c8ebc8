#include "bocorr/halfint.hpp"

#include <charconv>

#include "bocorr/errors.hpp"

namespace bocorr {

std::int64_t HalfInt::to_int() const {
  if (!is_integer()) throw InvalidArgument("half-integer " + str() + " used as an integer");
  return twice_ / 2;
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed half-integer '" + std::string(whole) + "'");
  return v;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (parse_int(text.substr(slash + 1), text) != 2)
      throw ParseError("half-integer denominator must be 2 in '" + std::string(text) + "'");
    return from_twice(parse_int(text.substr(0, slash), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string_view whole = text.substr(0, dot);
    bool neg = !whole.empty() && whole.front() == '-';
    std::int64_t w = parse_int(whole == "-" ? "0" : whole, text);
    std::int64_t t = 2 * w;
    if (frac == "5") t += neg ? -1 : 1;
    else if (frac != "0" && !frac.empty()) throw ParseError("not a half-integer: '" + std::string(text) + "'");
    return from_twice(t);
  }
  return HalfInt(parse_int(text, text));
}

bool try_mul(HalfInt a, HalfInt b, HalfInt& out) {
  std::int64_t p = a.twice() * b.twice();
  if (p % 2 != 0) return false;
  out = HalfInt::from_twice(p / 2);
  return true;
}

}  // namespace bocorr
