#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;

struct CliResult {
  int code = 0;
  std::string out;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = isolab::cli::dispatch(args, out, err);
  return {code, out.str()};
}

std::string corpus(const std::string& name) { return std::string(ISOLAB_CORPUS_DIR) + "/" + name; }

TEST(Cli, SlopesOrdinary) {
  const CliResult r = run({"slopes", "--in", corpus("ordinary2x2.json")});
  EXPECT_EQ(r.code, isolab::cli::kExitOk);
  EXPECT_EQ(json::parse(r.out), json::parse(R"({"slopes": [["-1",1],["0",1]]})"));
}

TEST(Cli, SlopesClassical) {
  const CliResult r = run({"slopes", "--in", corpus("ordinary2x2.json"), "--classical"});
  EXPECT_EQ(json::parse(r.out)["slopes"], json::parse(R"([["0",1],["1",1]])"));
}

TEST(Cli, LeafDimClassicalSign) {
  const CliResult r = run({"leafdim", "--type", "GSp", "--n", "4", "--nu", "1,1,0,0", "--classical"});
  EXPECT_EQ(r.code, isolab::cli::kExitOk);
  EXPECT_EQ(json::parse(r.out), json::parse(R"({"dim": 3})"));
}

TEST(Cli, PerfMemberBadSeries) {
  const CliResult r = run({"perf-member", "--params", "2,1,0", "--in", corpus("badseries.json")});
  EXPECT_EQ(r.code, isolab::cli::kExitOk);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["member"], false);
  EXPECT_TRUE(j["witness"].is_object());
}

TEST(Cli, ModuleErrorExitCode) {
  const CliResult r = run({"center-check", "--in", corpus("heisenberg_p5.json")});
  EXPECT_EQ(r.code, isolab::cli::kExitModuleError);
  EXPECT_EQ(json::parse(r.out)["error"], "SlopeNotStrictlyNegative");
}

TEST(Cli, MalformedInputExitCode) {
  EXPECT_EQ(run({"perf-member", "--params", "2,x", "--in", corpus("badseries.json")}).code,
            isolab::cli::kExitMalformed);
  EXPECT_EQ(run({"slopes", "--in", corpus("does_not_exist.json")}).code, isolab::cli::kExitMalformed);
  EXPECT_EQ(run({"no-such-command"}).code, isolab::cli::kExitMalformed);
}

TEST(Cli, SlopeExponents) {
  const CliResult r = run({"slope-exponents", "--mu1", "1/2", "--mu0", "1/3"});
  EXPECT_EQ(r.code, isolab::cli::kExitOk);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["a"], 1);
  EXPECT_EQ(j["r"], 2);
  EXPECT_EQ(j["s"], 3);
}

TEST(Cli, PrecisionFlagOverridesFile) {
  const CliResult r = run({"hom", "--in", corpus("hom_pair.json"), "--precision", "12"});
  EXPECT_EQ(r.code, isolab::cli::kExitOk);
  EXPECT_EQ(json::parse(r.out)["spec"]["N"], 12);
}

}  // namespace
