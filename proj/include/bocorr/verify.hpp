#pragma once

#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bocorr/series.hpp"

namespace bocorr {

enum class CheckStatus { pass, fail, error };
std::string status_name(CheckStatus s);

// Both sides of a comparison; note is free text carried into the report.
struct Sides {
  Sides(Series l, Series r, std::string n = {}) : lhs(std::move(l)), rhs(std::move(r)), note(std::move(n)) {}
  Series lhs;
  Series rhs;
  std::string note;
};

struct CheckSpec {
  std::string name;
  std::string topic;   // coverage key, see required_topics()
  std::string params;  // human-readable parameter set
  HalfInt n;           // default truncation
  bool gating = true;  // informational checks never affect the exit status
  std::function<Sides(HalfInt)> compute;
};

struct Discrepancy {
  Monomial monomial;
  Rational lhs;
  Rational rhs;
};

struct CheckResult {
  std::string name;
  std::string topic;
  std::string params;
  HalfInt n;
  bool gating = true;
  CheckStatus status = CheckStatus::error;
  std::optional<Discrepancy> first_discrepancy;
  std::string error_kind;
  std::string message;
  double ms = 0;
};

// All registered checks, ordered by name.
const std::vector<CheckSpec>& registry();
const CheckSpec* find_check(std::string_view name);

// Compares lhs and rhs exactly up to n (default: spec.n).
CheckResult run_check(const CheckSpec& spec, std::optional<HalfInt> n = std::nullopt);

// Glob with * and ?; a pattern without wildcards matches as a prefix; empty matches all.
bool name_matches(std::string_view pattern, std::string_view name);

// Results ordered by name. threads == 0 picks the hardware concurrency.
std::vector<CheckResult> run_suite(std::string_view filter = "", unsigned threads = 1);

// True when every gating result passed.
bool suite_passed(const std::vector<CheckResult>& results);

// Topics every registry must cover, and those with no registered check.
const std::vector<std::string>& required_topics();
std::vector<std::string> uncovered_topics(const std::vector<CheckSpec>& checks);

// {"checks":[{"name","status","first_discrepancy":{monomial,lhs,rhs}|null,"ms",...}]}
nlohmann::json report_json(const std::vector<CheckResult>& results, bool with_timing = true);
std::string report_table(const std::vector<CheckResult>& results);

}  // namespace bocorr
