#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>
#include <sys/wait.h>

#include "frob/cli/commands.hpp"

using namespace frob;
using io::json;

namespace {

struct Outcome {
  int code;
  json report;
  std::string text;
};

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  Outcome o{code, nullptr, out.str()};
  try {
    o.report = json::parse(o.text);
  } catch (const json::exception&) {
  }
  return o;
}

Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(FROBCTL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string text;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  const int status = pclose(pipe);
  Outcome o{WIFEXITED(status) ? WEXITSTATUS(status) : -1, nullptr, text};
  try {
    o.report = json::parse(text);
  } catch (const json::exception&) {
  }
  return o;
}

}  // namespace

TEST(CliPhi, FiniteUnit) {
  const auto o = run({"phi", "--input", sample("finite_210.json"), "--arg", "1,1,1"});
  ASSERT_EQ(o.code, 0) << o.text;
  EXPECT_EQ(o.report["result"]["values"]["perm"], (json{{"re", "3"}, {"im", "0"}}));
  EXPECT_EQ(o.report["result"]["methods_agree"], true);
}

TEST(CliPhi, MomentsDiagonal) {
  const auto o = run({"phi", "--input", sample("two_points.json"), "--arg", "u1", "--arg", "u1"});
  ASSERT_EQ(o.code, 0) << o.text;
  for (const char* m : {"perm", "part", "ind"}) EXPECT_EQ(o.report["result"]["values"][m]["re"], "4");
  EXPECT_EQ(o.report["result"]["methods_agree"], true);
  const auto single = run({"phi", "--input", sample("two_points.json"), "--arg", "u1", "--method", "ind"});
  EXPECT_EQ(single.report["result"]["values"].size(), 1u);
  EXPECT_FALSE(single.report["result"].contains("methods_agree"));
}

TEST(CliPhi, Errors) {
  const auto parse = run({"phi", "--input", sample("two_points.json"), "--arg", "u1 + u2"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(parse.report["error"]["code"], "parse");
  EXPECT_EQ(parse.report["error"]["column"], 6);

  const auto overflow = run({"phi", "--input", sample("two_points.json"), "--arg", "u1^2", "--arg", "u1^2"});
  EXPECT_EQ(overflow.code, 2);
  EXPECT_EQ(overflow.report["error"]["kind"], "validation");

  const auto method = run({"phi", "--input", sample("two_points.json"), "--arg", "u1", "--method", "fast"});
  EXPECT_EQ(method.code, 2);
}

TEST(CliDegree, Examples) {
  const auto three = run({"degree", "--input", sample("three_points.json")});
  ASSERT_EQ(three.code, 0) << three.text;
  EXPECT_EQ(three.report["result"]["degree"], 3);
  EXPECT_EQ(three.report["result"]["statement"], "Frobenius 3-homomorphism, certified up to degree 4");
  EXPECT_EQ(three.report["result"]["certificate"]["scope"], "certified up to degree 4");

  const auto shallow = run({"degree", "--input", sample("three_points_2d.json")});
  EXPECT_EQ(shallow.code, 2);
  EXPECT_EQ(shallow.report["error"]["code"], "configuration");

  const auto zero = run({"degree", "--input", sample("finite_zero.json")});
  EXPECT_EQ(zero.report["result"]["degree"], 0);

  const auto half = run({"degree", "--input", sample("finite_half.json")});
  EXPECT_EQ(half.code, 0);
  EXPECT_TRUE(half.report["result"]["degree"].is_null());
  EXPECT_EQ(half.report["result"]["statement"], "not Frobenius for any n <= 8");
}

TEST(CliDegree, ThreadsDoNotChangeReport) {
  const auto one = run({"degree", "--input", sample("two_points.json")});
  const auto four = run({"degree", "--input", sample("two_points.json"), "--threads", "4"});
  EXPECT_EQ(one.text, four.text);
}

TEST(CliDecompose, Examples) {
  const auto two = run({"decompose", "--input", sample("two_points.json")});
  ASSERT_EQ(two.code, 0) << two.text;
  const auto& r = two.report["result"];
  EXPECT_EQ(r["n"], 2);
  EXPECT_EQ(r["residual"], "0");
  EXPECT_EQ(r["scalars"], "exact");
  EXPECT_EQ(r["points"]["entries"].size(), 2u);
  EXPECT_EQ(two.report["seed"], 0);

  const auto doubled = run({"decompose", "--input", sample("double_point.json")});
  ASSERT_EQ(doubled.code, 0) << doubled.text;
  EXPECT_EQ(doubled.report["result"]["points"]["entries"],
            json::parse(R"([{"point":[{"re":"3","im":"0"}],"multiplicity":2}])"));

  const auto three = run({"decompose", "--input", sample("three_points_2d.json"), "--n", "3"});
  ASSERT_EQ(three.code, 0) << three.text;
  EXPECT_EQ(three.report["result"]["points"]["degree"], 3);
  EXPECT_EQ(three.report["result"]["points"]["entries"].size(), 2u);

  const auto finite = run({"decompose", "--input", sample("finite_210.json")});
  EXPECT_EQ(finite.report["result"]["points"]["entries"],
            json::parse(R"([{"label":"p","multiplicity":2},{"label":"q","multiplicity":1}])"));
}

TEST(CliDecompose, QuotientAndErrors) {
  const auto ok = run({"decompose", "--input", sample("parabola.json"), "--ideal", sample("parabola_ideal.json")});
  ASSERT_EQ(ok.code, 0) << ok.text;
  EXPECT_EQ(ok.report["result"]["points"]["degree"], 2);

  const auto off = run({"decompose", "--input", sample("off_parabola.json"), "--ideal", sample("parabola_ideal.json")});
  EXPECT_EQ(off.code, 2);
  EXPECT_EQ(off.report["error"]["code"], "annihilation");

  const auto half = run({"decompose", "--input", sample("finite_half.json")});
  EXPECT_EQ(half.code, 4);
  EXPECT_EQ(half.report["error"]["kind"], "not_frobenius");

  const auto small = run({"decompose", "--input", sample("two_points.json"), "--degree-bound", "1"});
  EXPECT_EQ(small.code, 2);
}

TEST(CliDecompose, IrrationalPointsFallBackToFloat) {
  const auto o = run({"decompose", "--input", sample("sqrt2.json")});
  ASSERT_EQ(o.code, 0) << o.text;
  EXPECT_EQ(o.report["result"]["scalars"], "float");
  EXPECT_EQ(o.report["result"]["points"]["entries"].size(), 2u);
}

TEST(CliDecompose, FloatModeReportsResidual) {
  const auto o = run({"decompose", "--input", sample("three_points_2d.json"), "--mode", "float", "--tol", "1e-20"});
  ASSERT_EQ(o.code, 0) << o.text;
  EXPECT_EQ(o.report["mode"], "float");
  EXPECT_EQ(o.report["precision"], 128);
  EXPECT_TRUE(o.report["result"]["residual"].is_number());
  EXPECT_LE(o.report["result"]["residual"].get<double>(), 1e-20);
}

TEST(CliDecompose, GaussianRationalPoints) {
  const auto o = run({"decompose", "--input", sample("gaussian_point.json")});
  ASSERT_EQ(o.code, 0) << o.text;
  EXPECT_EQ(o.report["result"]["scalars"], "exact");
  const auto entries = o.report["result"]["points"]["entries"].dump();
  EXPECT_NE(entries.find(R"({"re":"1/3","im":"-2"})"), std::string::npos) << entries;
}

TEST(CliIdentity, Examples) {
  for (const auto& [l, r] : std::vector<std::pair<int, int>>{{1, 1}, {3, 3}, {4, 4}}) {
    const auto o = run({"verify-identity", "--left", std::to_string(l), "--right", std::to_string(r)});
    ASSERT_EQ(o.code, 0) << o.text;
    EXPECT_EQ(o.report["result"]["equal"], true);
  }
  EXPECT_EQ(run({"verify-identity", "--left", "5", "--right", "1"}).code, 2);
}

TEST(CliReports, DeterministicInExactMode) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"decompose", "--input", sample("three_points_2d.json"), "--seed", "5"},
           {"degree", "--input", sample("two_points.json")},
           {"phi", "--input", sample("two_points.json"), "--arg", "u1", "--arg", "u1^2"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.text, b.text);
    EXPECT_FALSE(a.report.contains("timing_seconds"));
  }
  const auto timed = run({"degree", "--input", sample("two_points.json"), "--timing"});
  EXPECT_TRUE(timed.report.contains("timing_seconds"));
}

TEST(CliReports, DigestDependsOnInput) {
  const auto a = run({"degree", "--input", sample("two_points.json")});
  const auto b = run({"degree", "--input", sample("double_point.json")});
  EXPECT_NE(a.report["input_digest"], b.report["input_digest"]);
  EXPECT_EQ(a.report["input_digest"].get<std::string>().size(), 16u);
}

TEST(CliErrors, LoadAndUsage) {
  const auto corrupted = run({"degree", "--input", sample("corrupted.json")});
  EXPECT_EQ(corrupted.code, 2);
  EXPECT_EQ(corrupted.report["error"]["line"], 4);
  const auto missing = run({"degree", "--input", sample("nope.json")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"degree"}).code, 2);
  EXPECT_EQ(run({"degree", "--input", sample("two_points.json"), "--mode", "fuzzy"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliBinary, ExitCodesAndPrettyOutput) {
  const auto ok = run_binary("decompose --input " + sample("two_points.json") + " --pretty");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.text.find("\n  \"command\": \"decompose\""), std::string::npos) << ok.text;
  EXPECT_EQ(ok.report["result"]["residual"], "0");

  EXPECT_EQ(run_binary("decompose --input " + sample("finite_half.json")).code, 4);
  EXPECT_EQ(run_binary("phi --input " + sample("two_points.json") + " --arg 'u1 +'").code, 2);
  EXPECT_EQ(run_binary("no-such-command").code, 2);
}

TEST(CliDecompose, UnverifiableMomentsAreNumericalFailure) {
  const auto o = run({"decompose", "--input", sample("inconsistent.json")});
  EXPECT_EQ(o.code, 3);
  EXPECT_EQ(o.report["error"]["kind"], "numerical");
  EXPECT_EQ(o.report["error"]["best_residual"], "1");
}

TEST(CliSelfcheck, CorruptedInputIsLoadError) {
  const auto o = run({"selfcheck", "--input", sample("corrupted.json")});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(o.report["error"]["code"], "parse");
}

TEST(CliSelfcheck, FloatModeWithLooseTolerance) {
  const auto o = run({"selfcheck", "--mode", "float", "--tol", "1e-15"});
  ASSERT_EQ(o.code, 0) << o.text;
  const auto& r = o.report["result"];
  EXPECT_EQ(r["all_passed"], true);
  EXPECT_EQ(r["criteria"].size(), 11u);
  EXPECT_TRUE(r["float_check"]["max_residual"].is_number());
  EXPECT_LE(r["float_check"]["max_residual"].get<double>(), 1e-15);
}
