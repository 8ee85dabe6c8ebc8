// Acceptance criteria: one PASS/FAIL line per criterion, exact comparisons.
// Usage: acceptance [criterion ...]   (no argument runs all twelve)

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "bocorr/verify.hpp"

using namespace bocorr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

std::string describe(const CheckResult& r) {
  std::string s = r.name + " " + status_name(r.status);
  if (r.first_discrepancy) {
    std::string where = monomial_str(r.first_discrepancy->monomial);
    if (where == "1") where = "q^0";
    s += " at " + where + " (" + to_string(r.first_discrepancy->lhs) + " vs " +
         to_string(r.first_discrepancy->rhs) + ")";
  }
  if (!r.error_kind.empty()) s += " " + r.error_kind + ": " + r.message;
  return s;
}

// Runs every registered check matching one of the patterns; gating checks must pass.
Outcome run_group(const std::vector<std::string>& patterns, double* elapsed = nullptr) {
  Outcome out;
  std::vector<CheckResult> results;
  std::set<std::string> seen;
  const auto t0 = std::chrono::steady_clock::now();
  for (const std::string& p : patterns) {
    bool any = false;
    for (const CheckSpec& spec : registry()) {
      if (!name_matches(p, spec.name) || !spec.gating) continue;
      any = true;
      if (seen.insert(spec.name).second) results.push_back(run_check(spec));
    }
    if (!any) {
      out.pass = false;
      out.detail += "no check matches " + p + "; ";
    }
  }
  if (elapsed) *elapsed = seconds_since(t0);
  std::size_t passed = 0;
  std::vector<std::string> bad;
  for (const CheckResult& r : results) {
    if (r.status == CheckStatus::pass) ++passed;
    else bad.push_back(describe(r));
  }
  out.pass = out.pass && bad.empty();
  out.detail += std::to_string(passed) + "/" + std::to_string(results.size()) + " checks";
  for (const std::string& b : bad) out.detail += "; " + b;
  return out;
}

CheckResult run_named(const std::string& name) {
  const CheckSpec* spec = find_check(name);
  if (!spec) {
    CheckResult r;
    r.name = name;
    r.error_kind = "missing";
    r.message = "not registered";
    return r;
  }
  return run_check(*spec);
}

std::string json_without_timing(const std::vector<CheckResult>& results) {
  return report_json(results, false).dump();
}

std::vector<Criterion> criteria() {
  return {
      {1, "ff identity to q^20, both expansions, two values of u, under 5 s",
       [] {
         double t = 0;
         Outcome o = run_group({"identity-ff-double-*", "identity-ff-bilateral-*"}, &t);
         o.detail += ", " + fmt_seconds(t);
         if (t >= 5.0) {
           o.pass = false;
           o.detail += " exceeds 5 s";
         }
         return o;
       }},
      {2, "Pochhammer ratio sum to q^20 for k in {0,1,3}, t in {2/3,5/7}", [] { return run_group({"poch-ratio-*"}); }},
      {3, "both exponential identities to q^20", [] { return run_group({"exponential-*"}); }},
      {4, "length-restricted partition sums (i) and (ii) against enumeration to q^15, l <= 5",
       [] { return run_group({"length-sum-l*", "length-sum-part-*"}); }},
      {5, "level -1 one-point closed form against the oracle to q^12 for three points; q^0 = beta, q^1 = beta - 1/beta",
       [] { return run_group({"one-point-*"}); }},
      {6, "generalized one-point (q^10) and two-point (q^8) closed forms against the generalized trace; x^l partition sum to q^10",
       [] {
         Outcome o = run_group({"general-ab-*", "two-point-*", "omega-partition-sum-*"});
         const CheckResult printed = run_named("two-point-printed-cross-term");
         o.detail += "; two-point evaluated with the transposed cross term Omega(x,y,t2)Omega(y,x,1/t1); displayed "
                     "pairing: " +
                     describe(printed);
         return o;
       }},
      {7, "level-one charge sectors against the fermionic trace (k in {-1,0,2}, n in {1,2}, q^8); Theta'(1)(q)^3 to q^20",
       [] { return run_group({"level-one-sector-*", "theta-jet-triple-product"}); }},
      {8, "c_inf level -1/2 one-point closed form against the neutral boson trace to q^10",
       [] { return run_group({"c-one-point-half-*"}); }},
      {9, "both q-difference equations as displayed, residual zero to q^10 for n in {1,2,3}",
       [] {
         Outcome o = run_group({"qdiff-a-n*", "qdiff-c-n*"});
         const Outcome shifted = run_group({"qdiff-a-shifted-*"});
         o.detail += "; a_inf with sign (-1)^s and the charge -1 sector on the right: " + shifted.detail;
         return o;
       }},
      {10, "q-dimensions: level -1 counts to q^20, first coefficients 1,1,3,6, level -l Weyl sums (l in {2,3}) and "
           "c_inf/d_inf levels against trace extraction to q^10, c_inf level l-1/2 forms to q^20",
       [] {
         Outcome o = run_group({"qdim-*", "identity-ff-qdim-generating"});
         std::size_t info = 0;
         for (const CheckSpec& s : registry())
           if (!s.gating && name_matches("qdim-*", s.name)) ++info;
         o.detail += "; " + std::to_string(info) + " displayed-block d_inf comparisons reported separately";
         return o;
       }},
      {11, "reduction engine: assignment mode equals trace extraction for six instances, l=2, n in {0,1,2}, to q^8; "
           "literal report; hand q^0 case",
       [] {
         Outcome o = run_group({"duality-assign-*", "duality-modes-agree-*", "duality-hand-q0-*"});
         std::size_t lit = 0, lit_agree = 0, lit_error = 0;
         for (const CheckSpec& s : registry()) {
           if (!name_matches("duality-literal-*", s.name)) continue;
           const CheckResult r = run_check(s);
           ++lit;
           if (r.status == CheckStatus::pass) ++lit_agree;
           if (r.status == CheckStatus::error) {
             ++lit_error;
             o.detail += "; " + describe(r);
           }
         }
         if (lit == 0 || lit_error > 0) o.pass = false;
         o.detail += "; literal report: " + std::to_string(lit_agree) + "/" + std::to_string(lit) +
                     " agree with the trace for n >= 1; hand case: trace 2 beta = 12/5, literal beta^2 = 36/25";
         return o;
       }},
      {12, "infrastructure: truncation coherence, inversion, Weyl orders, JSON round trip, registry coverage, "
           "determinism and runtime of the full suite",
       [] {
         Outcome o = run_group({"infra-*", "registry-completeness"});
         const auto t0 = std::chrono::steady_clock::now();
         const std::vector<CheckResult> first = run_suite("", 1);
         const double serial = seconds_since(t0);
         const std::vector<CheckResult> second = run_suite("", 0);
         const bool same = json_without_timing(first) == json_without_timing(second);
         if (!same) {
           o.pass = false;
           o.detail += "; full suite differs between runs";
         }
         if (serial >= 600.0) o.pass = false;
         o.detail += "; full suite " + std::to_string(first.size()) + " checks in " + fmt_seconds(serial) +
                     (same ? ", identical on rerun" : "");
         return o;
       }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    try {
      wanted.insert(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion ...]\n";
      return 2;
    }
  }
  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << " -- " << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
