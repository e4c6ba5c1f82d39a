#include "sharpconst/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sharpconst;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(0.20710678118654752), "0.207106781");
  EXPECT_EQ(format_number(1e-12), "1e-12");
  EXPECT_EQ(format_number(kInf), "inf");
}

TEST(ParseExponent, Tokens) {
  EXPECT_TRUE(std::isinf(parse_exponent("inf")));
  EXPECT_EQ(parse_exponent("1"), 1.0);
  EXPECT_EQ(parse_exponent("2"), 2.0);
  EXPECT_EQ(parse_exponent("2.0"), 2.0);
  EXPECT_EQ(parse_exponent("2.0000000000001"), 2.0);
  EXPECT_EQ(parse_exponent("1.5"), 1.5);
  EXPECT_THROW(parse_exponent("0.5"), DomainError);
  EXPECT_THROW(parse_exponent("2x"), DomainError);
  EXPECT_THROW(parse_exponent(""), DomainError);
}

TEST(ProfileCsv, RoundTripIsByteIdentical) {
  const auto rows = A_profile(2, 1, kInf, 7);
  const std::string first = profile_csv(rows);
  EXPECT_EQ(first.substr(0, 6), "a,A,B\n");
  EXPECT_EQ(profile_csv(parse_profile_csv(first)), first);
  const std::string no_b = profile_csv(A_profile(2, 0, 2.0, 5));
  EXPECT_EQ(profile_csv(parse_profile_csv(no_b)), no_b);
  EXPECT_THROW(parse_profile_csv("x,y\n"), DomainError);
  EXPECT_THROW(parse_profile_csv("a,A,B\n0.5,abc,\n"), DomainError);
}

TEST(Cli, EnvelopeRows) {
  const CliRun r = run_cli({"envelope", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a,B\n0.146446609,0.146446609\n0.5,0.207106781\n0.853553391,0.146446609\n");
}

TEST(Cli, ProfileFirstOrderPEqualsOne) {
  const CliRun r = run_cli({"profile", "--n", "1", "--k", "0", "--p", "1", "--grid", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_profile_csv(r.out);
  ASSERT_EQ(rows.size(), 5U);
  for (const auto& row : rows) EXPECT_EQ(row.A, 0.5);
}

TEST(Cli, ProfileJson) {
  const CliRun r = run_cli({"profile", "--n", "2", "--k", "1", "--p", "inf", "--grid", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["p"], "inf");
  ASSERT_EQ(j["rows"].size(), 3U);
  EXPECT_NEAR(j["rows"][1]["A"].get<double>(), A_value({2, 1, kInf, 0.5}), 1e-12);
  EXPECT_LE(j["rows"][1]["A"].get<double>(), j["rows"][1]["B"].get<double>());
  EXPECT_FALSE(j["rows"][1]["B"].is_null());
}

TEST(Cli, LambdaFirstOrder) {
  const CliRun r = run_cli({"lambda", "--n", "1", "--k", "0", "--p", "inf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_NEAR(j["lambda"].get<double>(), 0.5, 1e-5);
  EXPECT_NEAR(j["argmax_a"].get<double>(), 0.5, 1e-4);
  EXPECT_EQ(j["method"], "closed-form");
  for (const char* key : {"n", "k", "p", "lambda", "argmax_a", "method"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, KernelDump) {
  const CliRun r = run_cli({"kernel", "--n", "2", "--k", "1", "--a", "0.25", "--nu", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  for (const char* key : {"g", "g_n", "S", "Q_n"}) {
    ASSERT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j[key]["knots"].size(), 3U);
    EXPECT_EQ(j[key]["pieces"].size(), 2U);
  }
  const auto left = j["Q_n"]["pieces"][0].get<std::vector<double>>();
  const auto right = j["Q_n"]["pieces"][1].get<std::vector<double>>();
  // Left minus right is S = 1 on [0; a).
  EXPECT_NEAR(left[0] - right[0], 1.0, 1e-15);
  EXPECT_NEAR(left[1] - right[1], 0.0, 1e-15);
  // The right piece takes the value nu_{n-1} at a.
  EXPECT_NEAR(right[0] + 0.25 * right[1], 2.0, 1e-15);
}

TEST(Cli, UsageErrorsNameTheFlag) {
  CliRun r = run_cli({"profile", "--n", "2", "--k", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--k"), std::string::npos);
  r = run_cli({"profile", "--n", "2", "--k", "1", "--p", "half"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--p"), std::string::npos);
  r = run_cli({"profile", "--n", "2", "--k", "1", "--colour", "red"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--colour"), std::string::npos);
  r = run_cli({"profile", "--n", "2", "--k", "1", "--grid", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--grid"), std::string::npos);
  r = run_cli({"kernel", "--n", "2", "--k", "1", "--nu", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--nu"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST(Cli, NonConvergenceExitCode) {
  setenv("SHARPCONST_MAX_ITERS", "1", 1);
  const CliRun r = run_cli({"profile", "--n", "4", "--k", "1", "--p", "3", "--grid", "3"});
  unsetenv("SHARPCONST_MAX_ITERS");
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, WritesToOutPath) {
  const auto path = std::filesystem::temp_directory_path() / "sharpconst_envelope_test.csv";
  const CliRun r = run_cli({"envelope", "--n", "1", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), "a,B\n0.5,0.5\n");
  std::filesystem::remove(path);
}

TEST(Cli, VerifyIsDeterministicForASeed) {
  const CliRun a = run_cli({"verify", "--only", "6", "--seed", "11", "--format", "json"});
  const CliRun b = run_cli({"verify", "--only", "6", "--seed", "11", "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.out;
  const json ja = json::parse(a.out);
  const json jb = json::parse(b.out);
  ASSERT_EQ(ja["criteria"].size(), 1U);
  EXPECT_EQ(ja["criteria"][0]["details"], jb["criteria"][0]["details"]);
  EXPECT_TRUE(ja["passed"].get<bool>());
}
