#include "bocorr/serialize.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "bocorr/errors.hpp"

namespace bocorr {

using nlohmann::json;

namespace {

std::string z_csv(const ZExp& z) {
  std::string out;
  for (int i = 1; i <= kMaxZVars; ++i) {
    if (z[i] == 0) continue;
    if (!out.empty()) out += ';';
    out += std::to_string(i) + ':' + std::to_string(z[i]);
  }
  return out;
}

}  // namespace

json to_json(const Series& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) {
    json z = json::object();
    for (int i = 1; i <= kMaxZVars; ++i)
      if (m.z[i] != 0) z[std::to_string(i)] = m.z[i];
    terms.push_back({{"q", m.q.str()}, {"z", z}, {"c", to_string(c)}});
  }
  return {{"truncation", s.truncation().str()}, {"terms", terms}};
}

Series series_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("terms"))
      throw ParseError("series JSON needs 'truncation' and 'terms'");
    auto half = [](const json& v) {
      if (v.is_string()) return HalfInt::parse(v.get<std::string>());
      if (v.is_number_integer()) return HalfInt(v.get<std::int64_t>());
      throw ParseError("exponent must be a string or an integer");
    };
    Series s(half(j.at("truncation")));
    for (const auto& t : j.at("terms")) {
      Monomial m;
      if (t.contains("q2")) m.q = HalfInt::from_twice(t.at("q2").get<std::int64_t>());
      else m.q = half(t.at("q"));
      if (t.contains("z")) {
        for (const auto& [k, v] : t.at("z").items()) {
          int var = std::stoi(k);
          if (var < 1 || var > kMaxZVars) throw ParseError("z-variable index out of range");
          m.z[var] = v.get<std::int32_t>();
        }
      }
      const json& c = t.at("c");
      Rational r = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
      if (m.q > s.truncation()) throw ParseError("term above the truncation");
      s.add(m, r);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("series JSON: ") + e.what());
  }
}

std::string to_csv(const Series& s) {
  std::ostringstream os;
  os << "# truncation=" << s.truncation().str() << "\n";
  os << "q_num,z,coeff_num,coeff_den\n";
  for (const auto& [m, c] : s.terms())
    os << m.q.twice() << ',' << z_csv(m.z) << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
  return os.str();
}

Series series_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Series> s;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# truncation=", 0) == 0) {
      s.emplace(HalfInt::parse(line.substr(13)));
      continue;
    }
    if (!header) {
      if (line != "q_num,z,coeff_num,coeff_den") throw ParseError("CSV header expected");
      header = true;
      continue;
    }
    if (!s) throw ParseError("CSV needs a '# truncation=' line");
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 4) throw ParseError("CSV row needs 4 fields: " + line);
    Monomial m;
    try {
      m.q = HalfInt::from_twice(std::stoll(f[0]));
      std::stringstream zs(f[1]);
      for (std::string kv; std::getline(zs, kv, ';');) {
        const auto colon = kv.find(':');
        if (colon == std::string::npos) throw ParseError("bad z entry: " + kv);
        const int var = std::stoi(kv.substr(0, colon));
        if (var < 1 || var > kMaxZVars) throw ParseError("z-variable index out of range");
        m.z[var] = std::stoi(kv.substr(colon + 1));
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad CSV row: " + line);
    }
    if (m.q > s->truncation()) throw ParseError("term above the truncation");
    s->add(m, parse_rational(f[2] + "/" + f[3]));
  }
  if (!s) throw ParseError("CSV needs a '# truncation=' line");
  return *s;
}

std::string to_pretty(const Series& s) {
  std::vector<std::array<std::string, 3>> rows;
  std::size_t w0 = 1, w1 = 1;
  for (const auto& [m, c] : s.terms()) {
    Monomial zonly{HalfInt(0), m.z};
    rows.push_back({m.q.str(), m.z.is_zero() ? "" : monomial_str(zonly), to_string(c)});
    w0 = std::max(w0, rows.back()[0].size());
    w1 = std::max(w1, rows.back()[1].size());
  }
  std::ostringstream os;
  os << "truncation " << s.truncation().str() << ", " << rows.size() << " terms\n";
  for (const auto& r : rows) {
    os << "  q^" << r[0] << std::string(w0 - r[0].size() + 2, ' ');
    if (w1 > 1 || !r[1].empty()) os << r[1] << std::string(w1 - r[1].size() + 2, ' ');
    os << r[2] << '\n';
  }
  return os.str();
}

}  // namespace bocorr
