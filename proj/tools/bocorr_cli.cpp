#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bocorr/closedform.hpp"
#include "bocorr/errors.hpp"
#include "bocorr/fock.hpp"
#include "bocorr/qseries.hpp"
#include "bocorr/serialize.hpp"
#include "bocorr/verify.hpp"

using namespace bocorr;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<Param> parse_points(const std::string& s) {
  std::vector<Param> pts;
  for (const std::string& p : split(s, ',')) pts.push_back(Param::parse(p));
  return pts;
}

std::vector<int> parse_label(const std::string& s) {
  std::vector<int> lam;
  for (const std::string& p : split(s, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(p, &used);
    } catch (const std::logic_error&) {
      throw ParseError("malformed label entry '" + p + "'");
    }
    if (used != p.size()) throw ParseError("malformed label entry '" + p + "'");
    lam.push_back(v);
  }
  return lam;
}

void emit(const Series& s, const std::string& format) {
  if (format == "json") std::cout << to_json(s).dump(2) << "\n";
  else if (format == "csv") std::cout << to_csv(s);
  else std::cout << to_pretty(s);
}

struct Common {
  std::string algebra = "a";
  std::string level = "-1";
  std::string lambda;
  std::string points;
  std::string n = "10";
  std::string format = "pretty";
};

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
}

// --- corr ------------------------------------------------------------------

struct CorrArgs : Common {
  std::string mode = "closed";
  std::string x, y;
};

Series run_corr(const CorrArgs& a) {
  const Algebra alg = parse_algebra(a.algebra);
  const HalfInt level = HalfInt::parse(a.level);
  const HalfInt n = HalfInt::parse(a.n);
  const std::vector<Param> pts = parse_points(a.points);
  const std::vector<int> lam = parse_label(a.lambda);
  const std::string& mode = a.mode;

  if (!a.x.empty() || !a.y.empty()) {
    if (alg != Algebra::a || level != HalfInt(-1)) throw InvalidArgument("--x/--y apply to a_inf at level -1");
    const Param x = a.x.empty() ? Param(Rational(1)) : Param::parse(a.x);
    const Param y = a.y.empty() ? Param(Rational(1)) : Param::parse(a.y);
    if (mode == "oracle") return a_generalized_trace(x, y, pts, n);
    if (pts.size() == 1) return generalized_one_point(x, y, pts[0], n);
    if (pts.size() == 2) return generalized_two_point(x, y, pts[0], pts[1], n);
    throw InvalidArgument("closed generalized functions exist for 1 and 2 points; use --mode oracle");
  }

  if (alg == Algebra::a && level == HalfInt(1)) {
    const int k = lam.empty() ? 0 : lam[0];
    if (lam.size() > 1) throw InvalidArgument("level 1 takes a single charge");
    if (mode == "oracle") return f1_charged_trace(Param::z_var(1), pts, n).coeff_z(1, k);
    return level1_sector(k, pts, n);
  }
  if (alg == Algebra::a && level == HalfInt(-1)) {
    const int m = lam.empty() ? 0 : lam[0];
    if (lam.size() > 1) throw InvalidArgument("level -1 takes a single charge");
    if (mode == "oracle") return a_sector_trace(m, pts, n);
    return a_sector(m, pts, n);
  }

  const DualityInstance inst = duality_instance(alg, level);
  if (inst.rank == 0) {
    const FockKind kind = alg == Algebra::c ? FockKind::boson_neutral : FockKind::fermion_neutral;
    if (!lam.empty() && !(lam.size() == 1 && lam[0] == 0)) throw InvalidArgument("this level has only the vacuum module");
    if (mode == "oracle") return neutral_trace(kind, pts, n);
    if (pts.empty()) return qdim_closed(alg, level, {}, n);
    if (alg == Algebra::c && pts.size() == 1) return c_one_point_half(pts[0], n);
    throw InvalidArgument("no closed form for this point count; use --mode oracle");
  }
  if (mode == "oracle") return duality_extract(inst, lam, pts, n);
  if (mode == "literal") return duality_reduce(inst, lam, pts, n, ReductionMode::literal);
  return duality_reduce(inst, lam, pts, n, ReductionMode::assignment);
}

// --- qdim ------------------------------------------------------------------

struct QdimArgs : Common {
  std::string form = "weyl";
};

Series run_qdim(const QdimArgs& a) {
  const Algebra alg = parse_algebra(a.algebra);
  const HalfInt level = HalfInt::parse(a.level);
  const HalfInt n = HalfInt::parse(a.n);
  const std::vector<int> lam = parse_label(a.lambda);
  if (a.form == "oracle") {
    const DualityInstance inst = duality_instance(alg, level);
    std::vector<Param> none;
    if (inst.rank == 0)
      return neutral_trace(alg == Algebra::c ? FockKind::boson_neutral : FockKind::fermion_neutral, none, n);
    return duality_extract(inst, lam, none, n);
  }
  if (a.form == "displayed") {
    if (alg != Algebra::d) throw InvalidArgument("--form displayed applies to d_inf");
    return qdim_d_printed_blocks(level, lam, n);
  }
  return qdim_closed(alg, level, lam, n, a.form == "product" ? QdimForm::product : QdimForm::weyl_sum);
}

// --- identity --------------------------------------------------------------

struct IdentityArgs : Common {
  std::string name;
  std::string u = "2/3@1/2", t = "2/3", z = "1@1", a = "2/3", x = "2/5";
  int k = 0, l = 1, i = 1;
};

Sides run_identity(const IdentityArgs& a) {
  const HalfInt n = HalfInt::parse(a.n);
  if (a.name == "ff" || a.name == "ff-double") {
    const Term u = Param::parse(a.u).value();
    return a.name == "ff" ? Sides{ff_lhs(u, n), ff_bilateral(u, n)} : Sides{ff_lhs(u, n), ff_double_sum(u, n)};
  }
  if (a.name == "poch-ratio") {
    const Param t = Param::parse(a.t);
    return {poch_ratio_sum(a.k, t, n), poch_ratio_closed(a.k, t, n)};
  }
  if (a.name == "exponential") {
    const Param z = Param::parse(a.z);
    return {exponential_sum(z, n), exponential_product(z, n)};
  }
  if (a.name == "binomial") {
    const Param z = Param::parse(a.z), b = Param::parse(a.a);
    return {binomial_sum(b, z, n), binomial_product(b, z, n)};
  }
  if (a.name == "length-sum") return {length_sum(a.l, n), length_sum_closed(a.l, n)};
  if (a.name == "part-sum") {
    const Param t = Param::parse(a.t);
    return {part_sum(a.l, a.i, t, n), part_sum_closed(a.l, a.i, t, n)};
  }
  if (a.name == "omega") {
    const Param x = Param::parse(a.x), t = Param::parse(a.t);
    return {omega_numerator(x, t, n), omega_partition_sum(x, t, n)};
  }
  throw InvalidArgument("unknown identity '" + a.name + "'");
}

// --- dump ------------------------------------------------------------------

struct DumpArgs : Common {
  std::string name;
  std::string upper, lower, z = "1@1";
  int k = 1;
};

Series run_dump(const DumpArgs& a) {
  const HalfInt n = HalfInt::parse(a.n);
  const std::vector<Param> pts = parse_points(a.points);
  auto one = [&]() -> const Param& {
    if (pts.size() != 1) throw InvalidArgument(a.name + " needs exactly one point");
    return pts[0];
  };
  if (a.name == "theta") return theta(one(), n);
  if (a.name == "theta-derivative") return theta_derivative(one(), a.k, n);
  if (a.name == "f_bo") return f_bo(pts, n);
  if (a.name == "euler") return euler(n);
  if (a.name == "pochhammer") return a.k > 0 ? pochhammer_n(one(), a.k, n) : pochhammer_inf(one(), n);
  if (a.name == "qhyper") {
    const std::vector<Param> up = parse_points(a.upper), lo = parse_points(a.lower);
    return qhyper(up, lo, Param::parse(a.z), n);
  }
  if (a.name == "qdim-a") return qdim_a_minus1(a.k, n);
  throw InvalidArgument("unknown series '" + a.name +
                        "' (theta, theta-derivative, f_bo, euler, pochhammer, qhyper, qdim-a)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Bloch-Okounkov n-point functions and q-dimensions for a_inf, c_inf, d_inf"};
  app.require_subcommand(1);

  CorrArgs corr;
  auto* c = app.add_subcommand("corr", "n-point function of a module (closed form, reduction or oracle)");
  c->add_option("--algebra", corr.algebra, "a, c or d")->capture_default_str();
  c->add_option("--level", corr.level, "level, e.g. -1, -1/2, 3/2")->capture_default_str();
  c->add_option("--lambda", corr.lambda, "comma-separated label (charge at level -1)");
  c->add_option("--points", corr.points, "comma-separated points s[@d], value s^2 q^d");
  c->add_option("--N", corr.n, "truncation (may be k/2)")->capture_default_str();
  c->add_option("--mode", corr.mode, "closed, assignment, literal or oracle")
      ->check(CLI::IsMember({"closed", "assignment", "literal", "oracle"}))
      ->capture_default_str();
  c->add_option("--x", corr.x, "fugacity of plus modes (a_inf level -1)");
  c->add_option("--y", corr.y, "fugacity of minus modes (a_inf level -1)");
  add_format(c, corr);

  QdimArgs qd;
  auto* q = app.add_subcommand("qdim", "q-dimension of a module");
  q->add_option("--algebra", qd.algebra, "a, c or d")->capture_default_str();
  q->add_option("--level", qd.level, "level")->capture_default_str();
  q->add_option("--lambda", qd.lambda, "comma-separated label");
  q->add_option("--N", qd.n, "truncation")->capture_default_str();
  q->add_option("--form", qd.form, "weyl, product (c at level l-1/2), displayed (d) or oracle")
      ->check(CLI::IsMember({"weyl", "product", "displayed", "oracle"}))
      ->capture_default_str();
  add_format(q, qd);

  IdentityArgs id;
  auto* i = app.add_subcommand("identity", "both sides of a q-series identity");
  i->add_option("name", id.name, "ff, ff-double, poch-ratio, exponential, binomial, length-sum, part-sum, omega")
      ->required();
  i->add_option("--u", id.u, "u = s@d")->capture_default_str();
  i->add_option("--t", id.t, "t")->capture_default_str();
  i->add_option("--z", id.z, "z")->capture_default_str();
  i->add_option("--a", id.a, "a")->capture_default_str();
  i->add_option("--x", id.x, "x")->capture_default_str();
  i->add_option("--k", id.k, "k")->capture_default_str();
  i->add_option("--l", id.l, "partition length")->capture_default_str();
  i->add_option("--i", id.i, "part index")->capture_default_str();
  i->add_option("--N", id.n, "truncation")->capture_default_str();
  add_format(i, id);

  std::string filter, vformat = "pretty";
  unsigned threads = 0;
  bool list = false, no_timing = false;
  auto* v = app.add_subcommand("verify", "run the verification suite");
  v->add_option("--filter", filter, "glob (* and ?) or name prefix");
  v->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  v->add_flag("--list", list, "list matching checks without running them");
  v->add_flag("--no-timing", no_timing, "omit timings for byte-identical reports");
  v->add_option("--format", vformat, "json or pretty")->check(CLI::IsMember({"json", "pretty"}))->capture_default_str();

  DumpArgs dump;
  auto* d = app.add_subcommand("dump", "print a registered generating function");
  d->add_option("name", dump.name, "theta, theta-derivative, f_bo, euler, pochhammer, qhyper, qdim-a")->required();
  d->add_option("--points,--t", dump.points, "comma-separated points");
  d->add_option("--k", dump.k, "derivative order, Pochhammer length (0 = infinite) or charge")->capture_default_str();
  d->add_option("--upper", dump.upper, "qhyper upper parameters");
  d->add_option("--lower", dump.lower, "qhyper lower parameters");
  d->add_option("--z", dump.z, "qhyper argument")->capture_default_str();
  d->add_option("--N", dump.n, "truncation")->capture_default_str();
  add_format(d, dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c) {
      emit(run_corr(corr), corr.format);
    } else if (*q) {
      emit(run_qdim(qd), qd.format);
    } else if (*i) {
      const Sides sides = run_identity(id);
      const CheckSpec spec{id.name, "", "", HalfInt::parse(id.n), true, [&](HalfInt) { return sides; }};
      const CheckResult r = run_check(spec);
      if (r.status == CheckStatus::error) throw InvalidArgument(r.message);
      const bool ok = r.status == CheckStatus::pass;
      if (id.format == "json") {
        nlohmann::json j = report_json({r}, false)["checks"][0];
        j["lhs"] = to_json(sides.lhs);
        j["rhs"] = to_json(sides.rhs);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << id.name << ": " << status_name(r.status) << "\n";
        if (r.first_discrepancy)
          std::cout << "first discrepancy at " << monomial_str(r.first_discrepancy->monomial) << ": "
                    << to_string(r.first_discrepancy->lhs) << " vs " << to_string(r.first_discrepancy->rhs) << "\n";
        std::cout << "lhs ";
        emit(sides.lhs, id.format);
        std::cout << "rhs ";
        emit(sides.rhs, id.format);
      }
      return ok ? kOk : kCheckFailed;
    } else if (*v) {
      if (list) {
        for (const CheckSpec& s : registry())
          if (name_matches(filter, s.name))
            std::cout << s.name << (s.gating ? "" : " (informational)") << "  " << s.params << "\n";
        return kOk;
      }
      const std::vector<CheckResult> results = run_suite(filter, threads);
      if (results.empty()) {
        std::cerr << "error: no check matches '" << filter << "'\n";
        return kUsage;
      }
      if (vformat == "json") {
        std::cout << report_json(results, !no_timing).dump(2) << "\n";
      } else {
        std::vector<CheckResult> shown = results;
        if (no_timing)
          for (auto& r : shown) r.ms = 0;
        std::cout << report_table(shown);
      }
      return suite_passed(results) ? kOk : kCheckFailed;
    } else if (*d) {
      emit(run_dump(dump), dump.format);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
