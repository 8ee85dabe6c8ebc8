#include "bocorr/fock.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "bocorr/errors.hpp"

namespace bocorr {

FockFactor make_factor(FockKind kind) {
  switch (kind) {
    case FockKind::boson_pair: return {kind, HalfInt(-1)};
    case FockKind::boson_neutral: return {kind, -HalfInt::half()};
    case FockKind::fermion_pair: return {kind, HalfInt(1)};
    case FockKind::fermion_neutral: return {kind, HalfInt::half()};
  }
  return {kind, HalfInt(0)};
}

bool is_charged(FockKind kind) { return kind == FockKind::boson_pair || kind == FockKind::fermion_pair; }
bool is_fermionic(FockKind kind) { return kind == FockKind::fermion_pair || kind == FockKind::fermion_neutral; }

std::string kind_name(FockKind kind) {
  switch (kind) {
    case FockKind::boson_pair: return "boson_pair";
    case FockKind::boson_neutral: return "boson_neutral";
    case FockKind::fermion_pair: return "fermion_pair";
    case FockKind::fermion_neutral: return "fermion_neutral";
  }
  return "?";
}

HalfInt state_energy(const FactorState& s) { return energy(s.plus) + energy(s.minus); }

int state_charge(FockKind kind, const FactorState& s) {
  const int lp = static_cast<int>(s.plus.size());
  const int lm = static_cast<int>(s.minus.size());
  switch (kind) {
    case FockKind::boson_pair: return lm - lp;
    case FockKind::fermion_pair: return lp - lm;
    default: return 0;
  }
}

namespace {

void check_op(FockKind kind, OpTag op) {
  if (!is_charged(kind) && op == OpTag::A) throw InvalidArgument("A(t) is not defined on a neutral factor");
}

// multiple of beta(t) in the eigenvalue
int central_multiple(FockKind kind, OpTag op) {
  const bool pair_cd = op != OpTag::A;
  switch (kind) {
    case FockKind::boson_pair: return pair_cd ? 2 : 1;
    case FockKind::fermion_pair: return pair_cd ? -2 : -1;
    case FockKind::boson_neutral: return 1;
    case FockKind::fermion_neutral: return -1;
  }
  return 0;
}

void require_plain(std::span<const Param> points) {
  for (const Param& t : points) {
    if (t.is_zero()) throw InvalidArgument("operator point t = 0");
    if (t.d() != HalfInt(0) || t.e() != 0)
      throw NonTruncatable("state sums need points without q-shift or z; use resummed_trace for " + t.str());
  }
}

// Sum over parts of t^(p - 1/2) (sign +1) or t^(-p + 1/2) (sign -1) at s.
Rational mode_sum(const Partition& p, const Rational& s, int sign) {
  Rational total(0);
  for (int part : p) total += pow(s, sign * (2 * part - 1));
  return total;
}

struct Entry {
  HalfInt e;
  int len = 0;
  Rational mult{1};
  std::vector<Rational> contrib;  // per point
  Partition part;
};

// Enumerates one species. `pos` and `neg` weight t^(p-1/2) and t^(-p+1/2).
std::vector<Entry> species_entries(bool strict, HalfInt n, std::span<const Param> points, int pos, int neg,
                                   bool keep_partitions) {
  std::vector<Entry> out;
  for_each_by_energy(n, strict, [&](const Partition& p) {
    Entry en;
    en.e = energy(p);
    en.len = static_cast<int>(p.size());
    en.contrib.reserve(points.size());
    for (const Param& t : points) {
      Rational v(0);
      if (pos != 0) v += pos * mode_sum(p, t.s(), +1);
      if (neg != 0) v += neg * mode_sum(p, t.s(), -1);
      en.contrib.push_back(std::move(v));
    }
    if (keep_partitions) en.part = p;
    out.push_back(std::move(en));
  });
  if (points.empty() && !keep_partitions) {
    std::map<std::pair<HalfInt, int>, Rational> counts;
    for (const auto& en : out) counts[{en.e, en.len}] += 1;
    out.clear();
    for (const auto& [k, c] : counts) {
      Entry en;
      en.e = k.first;
      en.len = k.second;
      en.mult = c;
      out.push_back(std::move(en));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.e < b.e; });
  return out;
}

struct SpeciesWeights {
  int plus_pos, plus_neg, minus_pos, minus_neg;
};

SpeciesWeights weights_for(FockKind kind, OpTag op) {
  if (!is_charged(kind)) return {1, -1, 0, 0};
  if (op == OpTag::A) return {1, 0, 0, -1};
  return {1, -1, 1, -1};
}

std::vector<Rational> centrals(FockKind kind, OpTag op, std::span<const Param> points) {
  std::vector<Rational> c;
  for (const Param& t : points) c.push_back(central_multiple(kind, op) * (t.s() / (1 - t.s() * t.s())));
  return c;
}

void require_generic(std::span<const Param> points) {
  for (const Param& t : points)
    if (t.s() * t.s() == 1) throw DegenerateParameter("operator point t = 1 makes the central term singular");
}

// key: (energy, #plus modes, #minus modes)
using Tally = std::map<std::tuple<HalfInt, int, int>, Rational>;

Tally tally_factor(FockKind kind, OpTag op, std::span<const Param> points, HalfInt n) {
  check_op(kind, op);
  require_plain(points);
  require_generic(points);
  const bool strict = is_fermionic(kind);
  const SpeciesWeights w = weights_for(kind, op);
  const std::vector<Rational> cen = centrals(kind, op, points);
  std::vector<Entry> plus = species_entries(strict, n, points, w.plus_pos, w.plus_neg, false);
  std::vector<Entry> minus;
  if (is_charged(kind)) minus = species_entries(strict, n, points, w.minus_pos, w.minus_neg, false);
  else minus.push_back(Entry{HalfInt(0), 0, Rational(1), std::vector<Rational>(points.size()), {}});
  Tally tally;
  Rational prod, eig;
  for (const Entry& a : plus) {
    for (const Entry& b : minus) {
      const HalfInt e = a.e + b.e;
      if (e > n) break;
      prod = a.mult * b.mult;
      for (std::size_t j = 0; j < points.size(); ++j) {
        eig = a.contrib[j] + b.contrib[j] + cen[j];
        prod *= eig;
      }
      if (sgn(prod) != 0) tally[{e, a.len, b.len}] += prod;
    }
  }
  return tally;
}

Series tally_to_series(const Tally& tally, const Term& fp, const Term& fm, HalfInt n) {
  Series s(n);
  for (const auto& [key, c] : tally) {
    const auto& [e, lp, lm] = key;
    Rational coef = c * pow(fp.c, lp) * pow(fm.c, lm);
    Monomial m{e + fp.m.q * lp + fm.m.q * lm, fp.m.z * lp + fm.m.z * lm};
    s.add(m, coef);
  }
  return s;
}

Term fug_term(const Param& p) {
  if (p.is_zero()) return Term{Rational(0), Monomial{}};
  return p.value();
}

}  // namespace

Series eigenvalue(const FockFactor& f, const FactorState& s, OpTag op, const Param& t, HalfInt n) {
  check_op(f.kind, op);
  const SpeciesWeights w = weights_for(f.kind, op);
  Series out = c_term(t, n) * Rational(central_multiple(f.kind, op));
  auto add_modes = [&](const Partition& p, int pos, int neg) {
    for (int part : p) {
      const HalfInt r = HalfInt(part) - HalfInt::half();
      if (pos != 0) out += Series::term(Term{power(t, r).c * pos, power(t, r).m}, n);
      if (neg != 0) out += Series::term(Term{power(t, -r).c * neg, power(t, -r).m}, n);
    }
  };
  add_modes(s.plus, w.plus_pos, w.plus_neg);
  if (is_charged(f.kind)) add_modes(s.minus, w.minus_pos, w.minus_neg);
  return out;
}

Series factor_trace(const FockFactor& f, OpTag op, std::span<const Param> points, HalfInt n, int zvar) {
  Tally tally = tally_factor(f.kind, op, points, n);
  Term fp{Rational(1), Monomial{}}, fm{Rational(1), Monomial{}};
  if (f.kind == FockKind::boson_pair) {
    fp.m.z = ZExp::var(zvar, -1);
    fm.m.z = ZExp::var(zvar, 1);
  } else if (f.kind == FockKind::fermion_pair) {
    fp.m.z = ZExp::var(zvar, 1);
    fm.m.z = ZExp::var(zvar, -1);
  }
  return tally_to_series(tally, fp, fm, n);
}

Series a_sector_trace(int m, std::span<const Param> points, HalfInt n) {
  return factor_trace(make_factor(FockKind::boson_pair), OpTag::A, points, n).coeff_z(1, m);
}

Series a_generalized_trace(const Param& x, const Param& y, std::span<const Param> points, HalfInt n) {
  Tally tally = tally_factor(FockKind::boson_pair, OpTag::A, points, n);
  return tally_to_series(tally, fug_term(x), fug_term(y), n);
}

Series neutral_trace(FockKind kind, std::span<const Param> points, HalfInt n) {
  if (is_charged(kind)) throw InvalidArgument("neutral_trace expects a neutral factor");
  OpTag op = kind == FockKind::boson_neutral ? OpTag::C : OpTag::D;
  return factor_trace(make_factor(kind), op, points, n);
}

Series f1_charged_trace(const Param& z, std::span<const Param> points, HalfInt n) {
  Tally tally = tally_factor(FockKind::fermion_pair, OpTag::A, points, n);
  Term zt = fug_term(z);
  Term zi = z.is_zero() ? zt : z.inverse().value();
  return tally_to_series(tally, zt, zi, n);
}

Series duality_trace(std::span<const FockFactor> factors, OpTag op, std::span<const Param> points, HalfInt n,
                     const ZWindow* window) {
  const int nf = static_cast<int>(factors.size());
  const int np = static_cast<int>(points.size());
  if (nf == 0) throw InvalidArgument("duality_trace needs at least one factor");
  if (np > 8) throw CapExceeded("too many operator points");
  std::vector<int> zvar(nf, 0);
  int next = 1;
  for (int i = 0; i < nf; ++i)
    if (is_charged(factors[i].kind)) zvar[i] = next++;
  if (next - 1 > kMaxZVars) throw CapExceeded("too many charged factors");
  if (window && static_cast<int>(window->size()) < next - 1) throw InvalidArgument("z-window too short");

  const int nsub = 1 << np;
  std::vector<std::vector<Series>> block(nf);
  for (int i = 0; i < nf; ++i) {
    for (int mask = 0; mask < nsub; ++mask) {
      std::vector<Param> sub;
      for (int j = 0; j < np; ++j)
        if (mask >> j & 1) sub.push_back(points[j]);
      OpTag fop = is_charged(factors[i].kind) ? op : (factors[i].kind == FockKind::boson_neutral ? OpTag::C : OpTag::D);
      Series t = factor_trace(factors[i], fop, sub, n, zvar[i] > 0 ? zvar[i] : 1);
      if (window && zvar[i] > 0) t = t.window_z(zvar[i], (*window)[zvar[i] - 1].first, (*window)[zvar[i] - 1].second);
      block[i].push_back(std::move(t));
    }
  }

  Series total(n);
  std::vector<int> assign(np, 0);
  while (true) {
    std::vector<int> masks(nf, 0);
    for (int j = 0; j < np; ++j) masks[assign[j]] |= 1 << j;
    Series prod = block[0][masks[0]];
    for (int i = 1; i < nf; ++i) prod = prod * block[i][masks[i]];
    total += prod;
    int j = 0;
    while (j < np && ++assign[j] == nf) assign[j++] = 0;
    if (j == np) break;
  }
  return total;
}

Series duality_trace_direct(std::span<const FockFactor> factors, OpTag op, std::span<const Param> points,
                            HalfInt n) {
  require_plain(points);
  require_generic(points);
  const int nf = static_cast<int>(factors.size());
  struct FactorStates {
    std::vector<Entry> plus, minus;
    std::vector<Rational> cen;
    int zvar = 0;
    int charge_sign = 0;
  };
  std::vector<FactorStates> fs(nf);
  int next = 1;
  for (int i = 0; i < nf; ++i) {
    const FockKind kind = factors[i].kind;
    OpTag fop = is_charged(kind) ? op : (kind == FockKind::boson_neutral ? OpTag::C : OpTag::D);
    check_op(kind, fop);
    const SpeciesWeights w = weights_for(kind, fop);
    const bool strict = is_fermionic(kind);
    fs[i].plus = species_entries(strict, n, points, w.plus_pos, w.plus_neg, true);
    if (is_charged(kind)) fs[i].minus = species_entries(strict, n, points, w.minus_pos, w.minus_neg, true);
    else fs[i].minus.push_back(Entry{HalfInt(0), 0, Rational(1), std::vector<Rational>(points.size()), {}});
    fs[i].cen = centrals(kind, fop, points);
    if (is_charged(kind)) {
      fs[i].zvar = next++;
      fs[i].charge_sign = kind == FockKind::boson_pair ? -1 : 1;
    }
  }
  const std::size_t np = points.size();
  Series total(n);
  std::vector<Rational> eig(np);
  ZExp z;
  std::function<void(int, HalfInt)> rec = [&](int i, HalfInt used) {
    if (i == nf) {
      Rational prod(1);
      for (std::size_t j = 0; j < np; ++j) prod *= eig[j];
      total.add(Monomial{used, z}, prod);
      return;
    }
    for (const Entry& a : fs[i].plus) {
      if (used + a.e > n) break;
      for (const Entry& b : fs[i].minus) {
        if (used + a.e + b.e > n) break;
        std::vector<Rational> saved = eig;
        for (std::size_t j = 0; j < np; ++j) eig[j] += a.contrib[j] + b.contrib[j] + fs[i].cen[j];
        ZExp zs = z;
        if (fs[i].zvar > 0) z[fs[i].zvar] += fs[i].charge_sign * (a.len - b.len);
        rec(i + 1, used + a.e + b.e);
        z = zs;
        eig = std::move(saved);
      }
    }
  };
  rec(0, HalfInt(0));
  return total;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(i);
      rec(i + 1);
      cur[b].pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

namespace {

// sum_{r in 1/2 + N} w^r with w = s^2 q^v.
Series half_geometric(const Rational& s, std::int64_t v, HalfInt n) {
  Series out(n);
  if (v == 0) {
    if (s * s == 1) throw DegenerateParameter("mode sum at w = 1");
    out.add(Monomial{}, s / (1 - s * s));
    return out;
  }
  const bool down = v < 0;
  const Rational base = down ? 1 / s : s;
  const std::int64_t step = down ? -v : v;
  Rational c = down ? -base : base;
  const Rational b2 = base * base;
  for (std::int64_t odd = 1; HalfInt::from_twice(odd * step) <= n; odd += 2) {
    out.add(Monomial{HalfInt::from_twice(odd * step), {}}, c);
    c *= b2;
  }
  return out;
}

struct Species {
  Term fug;
  bool fermion;
  // eta = +1: +t^r, eta = -1: t^(-r), each with a coefficient.
  std::vector<std::pair<int, int>> weights;  // (coefficient, eta)
};

std::vector<Species> species_for(FockKind kind, OpTag op, const Param& fug_plus, const Param& fug_minus) {
  check_op(kind, op);
  const bool fermion = is_fermionic(kind);
  std::vector<std::pair<int, int>> both{{1, 1}, {-1, -1}};
  if (!is_charged(kind)) return {Species{Term{Rational(1), Monomial{}}, fermion, both}};
  if (op == OpTag::A)
    return {Species{fug_term(fug_plus), fermion, {{1, 1}}}, Species{fug_term(fug_minus), fermion, {{-1, -1}}}};
  return {Species{fug_term(fug_plus), fermion, both}, Species{fug_term(fug_minus), fermion, both}};
}

Series connected(const std::vector<Species>& species, const std::vector<int>& block, std::span<const Param> points,
                 HalfInt n) {
  Series kappa(n);
  const int b = static_cast<int>(block.size());
  for (const Species& sp : species) {
    if (sgn(sp.fug.c) == 0) continue;
    const int nw = static_cast<int>(sp.weights.size());
    int combos = 1;
    for (int i = 0; i < b; ++i) combos *= nw;
    for (int code = 0; code < combos; ++code) {
      int c = code, coef = 1;
      Rational s(1);
      std::int64_t d = 0;
      for (int j : block) {
        const auto& [wc, eta] = sp.weights[c % nw];
        c /= nw;
        coef *= wc;
        const Param& t = points[j];
        s *= eta > 0 ? t.s() : 1 / t.s();
        d += eta * t.d().to_int();
      }
      for (std::int64_t k = 1; k + d <= n.twice(); ++k) {
        const std::int64_t v = k + d;
        const HalfInt fq = sp.fug.m.q * k;
        const HalfInt val = HalfInt::from_twice(v < 0 ? -v : v) + fq;
        if (val > n) continue;
        Rational kp(1);
        for (int i = 1; i < b; ++i) kp *= static_cast<long>(k);
        if (sp.fermion && k % 2 == 0) kp = -kp;
        kp *= coef;
        kp *= pow(sp.fug.c, static_cast<long>(k));
        Series g = half_geometric(s, v, n);
        kappa += g.times(Term{kp, Monomial{fq, sp.fug.m.z * static_cast<std::int32_t>(k)}});
      }
    }
  }
  return kappa;
}

}  // namespace

Series resummed_trace(FockKind kind, OpTag op, std::span<const Param> points, const Param& fug_plus,
                      const Param& fug_minus, HalfInt n) {
  for (const Param& t : points) {
    if (t.is_zero() || t.e() != 0) throw InvalidArgument("operator points must be nonzero and z-free");
    if (!t.d().is_integer()) throw IllegalPower("operator points need an integral q-shift");
  }
  const std::vector<Species> species = species_for(kind, op, fug_plus, fug_minus);
  const int np = static_cast<int>(points.size());

  Series phi0 = Series::constant(Rational(1), n);
  for (const Species& sp : species) {
    if (sgn(sp.fug.c) == 0) continue;
    Term w{sp.fug.c, Monomial{sp.fug.m.q + HalfInt::half(), sp.fug.m.z}};
    if (sp.fermion) {
      w.c = -w.c;
      phi0 = phi0 * pochhammer_inf(w, n);
    } else {
      phi0 = phi0 * invert_unit(pochhammer_inf(w, n));
    }
  }

  std::map<std::vector<int>, Series> cache;
  auto kappa = [&](const std::vector<int>& block) -> const Series& {
    auto it = cache.find(block);
    if (it != cache.end()) return it->second;
    Series k = connected(species, block, points, n);
    if (block.size() == 1) k += c_term(points[block[0]], n) * Rational(central_multiple(kind, op));
    return cache.emplace(block, std::move(k)).first->second;
  };

  Series sum(n);
  for (const auto& part : set_partitions(np)) {
    Series prod = Series::constant(Rational(1), n);
    for (const auto& block : part) prod = prod * kappa(block);
    sum += prod;
  }
  return phi0 * sum;
}

Series resummed_a_sector(int m, std::span<const Param> points, HalfInt n) {
  return resummed_trace(FockKind::boson_pair, OpTag::A, points, Param::z_var(1, -1), Param::z_var(1, 1), n)
      .coeff_z(1, m);
}

Series resummed_neutral(FockKind kind, std::span<const Param> points, HalfInt n) {
  if (is_charged(kind)) throw InvalidArgument("resummed_neutral expects a neutral factor");
  OpTag op = kind == FockKind::boson_neutral ? OpTag::C : OpTag::D;
  return resummed_trace(kind, op, points, Param(Rational(1)), Param(Rational(1)), n);
}

}  // namespace bocorr
