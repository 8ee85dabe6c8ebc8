#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bocorr/errors.hpp"
#include "bocorr/qseries.hpp"
#include "bocorr/verify.hpp"

using namespace bocorr;

namespace {

Series constant(long c, HalfInt n) { return Series::constant(Rational(c), n); }

CheckSpec spec(std::string name, std::function<Sides(HalfInt)> f, bool gating = true) {
  return CheckSpec{std::move(name), "infrastructure", "", HalfInt(4), gating, std::move(f)};
}

}  // namespace

TEST(VerifyTest, NameMatching) {
  EXPECT_TRUE(name_matches("", "anything"));
  EXPECT_TRUE(name_matches("identity-ff", "identity-ff-double-2/3@1/2"));
  EXPECT_FALSE(name_matches("ff", "identity-ff-double"));
  EXPECT_TRUE(name_matches("*ff*", "identity-ff-double"));
  EXPECT_TRUE(name_matches("qdiff-a-n?", "qdiff-a-n3"));
  EXPECT_FALSE(name_matches("qdiff-a-n?", "qdiff-a-shifted-n3"));
  EXPECT_FALSE(name_matches("one-point-*", "residue-one-point-m0"));
}

TEST(VerifyTest, RegistryIsSortedUniqueAndComplete) {
  const auto& reg = registry();
  ASSERT_FALSE(reg.empty());
  std::set<std::string> names;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    names.insert(reg[i].name);
    if (i > 0) {
      EXPECT_LT(reg[i - 1].name, reg[i].name);
    }
    EXPECT_NE(std::find(required_topics().begin(), required_topics().end(), reg[i].topic), required_topics().end())
        << reg[i].name << " has unknown topic " << reg[i].topic;
  }
  EXPECT_EQ(names.size(), reg.size());
  EXPECT_TRUE(uncovered_topics(reg).empty());
  EXPECT_NE(find_check("registry-completeness"), nullptr);
  EXPECT_EQ(find_check("no-such-check"), nullptr);
}

TEST(VerifyTest, UncoveredTopicsIgnoreInformationalChecks) {
  std::vector<CheckSpec> only_info{spec("x", [](HalfInt n) { return Sides{constant(1, n), constant(1, n)}; }, false)};
  EXPECT_EQ(uncovered_topics(only_info).size(), required_topics().size());
}

TEST(VerifyTest, PassFailAndFirstDiscrepancy) {
  const CheckResult ok = run_check(spec("ok", [](HalfInt n) { return Sides{euler(n), euler(n)}; }));
  EXPECT_EQ(ok.status, CheckStatus::pass);
  EXPECT_FALSE(ok.first_discrepancy);

  const CheckResult bad = run_check(spec("bad", [](HalfInt n) {
    Series s = euler(n);
    s.add(Monomial{HalfInt(3), {}}, Rational(1));
    return Sides{s, euler(n)};
  }));
  EXPECT_EQ(bad.status, CheckStatus::fail);
  ASSERT_TRUE(bad.first_discrepancy);
  EXPECT_EQ(bad.first_discrepancy->monomial.q, HalfInt(3));
  EXPECT_EQ(bad.first_discrepancy->rhs - bad.first_discrepancy->lhs, Rational(-1));
}

TEST(VerifyTest, ErrorsAreReportedNotThrown) {
  const CheckResult r = run_check(spec("degenerate", [](HalfInt n) {
    return Sides{c_term(Param(Rational(1)), n), constant(0, n)};
  }));
  EXPECT_EQ(r.status, CheckStatus::error);
  EXPECT_EQ(r.error_kind, "DegenerateParameter");

  const CheckResult short_side = run_check(spec("short", [](HalfInt n) {
    return Sides{constant(1, n - HalfInt(1)), constant(1, n)};
  }));
  EXPECT_EQ(short_side.status, CheckStatus::error);
  EXPECT_EQ(short_side.error_kind, "NonTruncatable");
}

TEST(VerifyTest, ZeroTruncationAndMonotonicity) {
  for (const char* name : {"one-point-2/3", "poch-ratio-k1-2/3", "level-one-sector-k2-n1"}) {
    const CheckSpec* s = find_check(name);
    ASSERT_NE(s, nullptr) << name;
    EXPECT_EQ(run_check(*s, HalfInt(0)).status, CheckStatus::pass) << name;
    EXPECT_EQ(run_check(*s, HalfInt(3)).status, CheckStatus::pass) << name;
  }
  // A check that fails at q^3 passes below it.
  const CheckSpec* printed = find_check("qdiff-a-n1");
  ASSERT_NE(printed, nullptr);
  const CheckResult r = run_check(*printed);
  ASSERT_TRUE(r.first_discrepancy);
  if (r.first_discrepancy->monomial.q > HalfInt(0)) {
    EXPECT_EQ(run_check(*printed, r.first_discrepancy->monomial.q - HalfInt::half()).status, CheckStatus::pass);
  }
}

TEST(VerifyTest, SuiteGatingAndReports) {
  const CheckSpec gating_fail = spec("g", [](HalfInt n) { return Sides{constant(1, n), constant(2, n)}; });
  const CheckSpec info_fail = spec("i", [](HalfInt n) { return Sides{constant(1, n), constant(2, n)}; }, false);
  const CheckSpec good = spec("p", [](HalfInt n) { return Sides{constant(1, n), constant(1, n)}; });
  EXPECT_TRUE(suite_passed({run_check(good), run_check(info_fail)}));
  EXPECT_FALSE(suite_passed({run_check(good), run_check(gating_fail)}));

  const auto results = std::vector<CheckResult>{run_check(good), run_check(info_fail)};
  const nlohmann::json j = report_json(results, false);
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][0]["name"], "p");
  EXPECT_EQ(j["checks"][0]["status"], "pass");
  EXPECT_TRUE(j["checks"][0]["first_discrepancy"].is_null());
  EXPECT_FALSE(j["checks"][0].contains("ms"));
  EXPECT_EQ(j["checks"][1]["gating"], false);
  EXPECT_EQ(j["checks"][1]["first_discrepancy"]["lhs"], "1");
  EXPECT_TRUE(report_json(results, true)["checks"][0].contains("ms"));
  EXPECT_NE(report_table(results).find("1/2 pass"), std::string::npos);
}

TEST(VerifyTest, SuiteIsDeterministicAcrossThreadCounts) {
  const auto a = run_suite("identity", 1);
  const auto b = run_suite("identity", 4);
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(report_json(a, false).dump(), report_json(b, false).dump());
  EXPECT_TRUE(run_suite("no-such-prefix").empty());
}
