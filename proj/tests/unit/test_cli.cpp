#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "bocorr/closedform.hpp"
#include "bocorr/fock.hpp"
#include "bocorr/serialize.hpp"

using namespace bocorr;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(BOCORR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(CliTest, CorrOracleMatchesLibrary) {
  const CliRun r = run("corr --algebra a --level -1 --lambda 0 --points 2/3 --N 6 --mode oracle --format json");
  ASSERT_EQ(r.code, 0);
  const std::vector<Param> pts{Param(Rational(2, 3))};
  EXPECT_EQ(series_from_json(nlohmann::json::parse(r.out)), a_sector_trace(0, pts, HalfInt(6)));
}

TEST(CliTest, CorrClosedAgreesWithOracle) {
  const std::string common = "corr --algebra a --level -2 --lambda 1,0 --points 2/3 --N 3 --format csv";
  const CliRun closed = run(common + " --mode assignment");
  const CliRun oracle = run(common + " --mode oracle");
  ASSERT_EQ(closed.code, 0);
  EXPECT_EQ(closed.out, oracle.out);
}

TEST(CliTest, QdimCsvRoundTrip) {
  const CliRun r = run("qdim --algebra c --level 3/2 --lambda 1 --N 8 --form product --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(series_from_csv(r.out), qdim_closed(Algebra::c, HalfInt::from_twice(3), {1}, HalfInt(8), QdimForm::product));
}

TEST(CliTest, OutputIsByteIdenticalAcrossRuns) {
  const std::string args = "verify --filter identity-ff --no-timing --format json";
  const CliRun a = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_EQ(a.out, run(args + " --threads 1").out);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run("identity ff --u 2/3@1/2 --N 10").code, 0);
  EXPECT_EQ(run("verify --filter qdiff-a-n1").code, 1);
  EXPECT_EQ(run("verify --filter no-such-check").code, 2);
  EXPECT_EQ(run("dump no-such-function").code, 2);
  EXPECT_EQ(run("corr --algebra b --level -1").code, 2);
  EXPECT_EQ(run("corr --points 1 --N 4").code, 2);
  EXPECT_EQ(run("qdim --N 1/3").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(CliTest, DumpTheta) {
  const CliRun r = run("dump theta --t 2/3 --N 5 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(series_from_json(nlohmann::json::parse(r.out)), theta(Param(Rational(2, 3)), HalfInt(5)));
}
