#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ansatz/families.hpp"
#include "cli.hpp"

using namespace ansatz;
using ansatz::cli::json;

namespace {

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ansatz_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::string write_family(const std::string& name, const std::map<std::string, Complex>& params) {
    const auto fam = make_family(name, params);
    cli::Problem p{fam.spec, fam.window, true, 1e-10};
    return write(name + ".json", cli::problem_to_json(p).dump(2));
  }

  std::filesystem::path dir_;
};

const char* kLegendreAtTwo = R"({
  "order": 2,
  "coefficients": {"alpha": 1, "a": 2, "beta": 4, "b": 6, "gamma": -1, "c": -1},
  "initial_conditions": [{"x": 0, "value": 1}],
  "x_window": {"min": 0, "max": 20}
})";

}  // namespace

TEST_F(CliTest, DeriveLegendreListsRootsAsEndpoints) {
  const auto r = run_cli({"derive", write("p.json", kLegendreAtTwo), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  const auto& factors = doc["weight"]["power_factors"];
  ASSERT_EQ(factors.size(), 2u);
  std::vector<double> roots;
  for (const auto& f : factors) {
    EXPECT_NEAR(f["exponent"][0].get<double>(), -0.5, 1e-13);
    roots.push_back(f["root"][0].get<double>());
  }
  std::sort(roots.begin(), roots.end());
  EXPECT_NEAR(roots[0], 2 - std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(roots[1], 2 + std::sqrt(3.0), 1e-13);
  ASSERT_EQ(doc["endpoints"].size(), 2u);
  EXPECT_NEAR(doc["endpoints"][0]["location"][0].get<double>(), roots[0], 1e-13);
  EXPECT_EQ(doc["pairs"].size(), 1u);
}

TEST_F(CliTest, DeriveHermite) {
  const auto r = run_cli({"family", "hermite", "--param", "x=1", "--mode", "derive", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  const auto& p = doc["weight"]["exp_poly"];
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0][0].get<double>(), 0.0);
  EXPECT_EQ(p[1][0].get<double>(), -1.0);
  EXPECT_EQ(p[2][0].get<double>(), 0.25);
  ASSERT_EQ(doc["endpoints"].size(), 2u);
  EXPECT_NEAR(doc["endpoints"][0]["direction"].get<double>(), -M_PI / 2, 1e-12);
  EXPECT_NEAR(doc["endpoints"][1]["direction"].get<double>(), M_PI / 2, 1e-12);
}

TEST_F(CliTest, HumanDeriveMentionsEveryPart) {
  const auto r = run_cli({"derive", write("p.json", kLegendreAtTwo)});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"D(t)", "L(t)", "Q(t)", "power factor", "endpoints:", "pairs:"}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
}

TEST_F(CliTest, MalformedFileNamesTheField) {
  const auto missing = run_cli({"derive", write("a.json", R"({"order": 2, "coefficients": {"alpha": 1}})")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("coefficients"), std::string::npos) << missing.err;

  const auto wrong = run_cli({"derive", write("b.json", R"({"order": 2, "coefficients": [1, 2, 3, 4, 5, "x"],
    "initial_conditions": [{"x": 0, "value": 1}], "x_window": {"min": 0, "max": 1}})")});
  EXPECT_EQ(wrong.code, 1);
  EXPECT_NE(wrong.err.find("coefficients"), std::string::npos) << wrong.err;

  const auto syntax = run_cli({"derive", write("c.json", "{ not json")});
  EXPECT_EQ(syntax.code, 1);
  EXPECT_EQ(run_cli({"derive", (dir_ / "absent.json").string()}).code, 1);
}

TEST_F(CliTest, ComplexCoefficientsAndListForm) {
  const auto r = run_cli({"derive", write("p.json", R"({
    "order": 2, "coefficients": [1, 2, [4, 0], 6, -1, -1],
    "initial_conditions": [{"x": 0, "value": [1, 0]}], "x_window": {"min": 0, "max": 20}})"), "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, FamilyEvalMatchesOracle) {
  const auto r = run_cli({"family", "legendre", "--param", "x=0.5", "--n", "0..5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["rows"].size(), 6u);
  for (const auto& row : doc["rows"]) EXPECT_LE(row["relative_difference"].get<double>(), 1e-7);
}

TEST_F(CliTest, GammaChainResidual) {
  const auto r = run_cli({"family", "gamma", "--x", "2.5", "--verify", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json row = json::parse(r.out)["rows"][0];
  EXPECT_LE(row["residual"].get<double>(), 1e-8);
  EXPECT_LE(row["relative_difference"].get<double>(), 1e-8);
}

TEST_F(CliTest, EmptyRangeGivesHeaderOnly) {
  const auto r = run_cli({"family", "legendre", "--param", "x=0.5", "--n", "5..4", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "x,re,im,error_estimate,oracle_re,oracle_im,relative_difference\n");
}

TEST_F(CliTest, VerifyHermite) {
  const auto r = run_cli({"family", "hermite", "--param", "x=1", "--mode", "verify", "--probes", "20"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, VerifyDetectsCorruptedCoefficient) {
  const auto fam = make_family("legendre", {{"x", 0.5}});
  const std::string reference = write_family("legendre", {{"x", 0.5}});
  cli::Problem corrupted{fam.spec, fam.window, true, 1e-10};
  corrupted.spec.c *= 1.1;
  const std::string bad = write("bad.json", cli::problem_to_json(corrupted).dump());
  const auto r = run_cli({"verify", bad, "--reference", reference});
  EXPECT_EQ(r.code, 5) << r.out << r.err;
  EXPECT_EQ(run_cli({"verify", reference, "--reference", reference}).code, 0);
}

TEST_F(CliTest, ZeroInitialValue) {
  const auto fam = make_family("hermite", {{"x", 1.0}});
  cli::Problem p{fam.spec, fam.window, true, 1e-10};
  p.spec.initial_conditions = {{0.0, 0.0}};
  const auto r = run_cli({"verify", write("zero.json", cli::problem_to_json(p).dump())});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli({"derive", write("deg.json", R"({"order": 2, "coefficients": [0, 0, 0, 0, 1, 1],
    "initial_conditions": [{"x": 0, "value": 1}], "x_window": {"min": 0, "max": 5}})")}).code, 2);
  EXPECT_EQ(run_cli({"family", "gamma", "--mode", "derive", "--window", "-3,-2"}).code, 3);
  const auto fam = make_family("hermite", {{"x", 1.0}});
  cli::Problem p{fam.spec, fam.window, true, 1e-10};
  p.spec.initial_conditions[1].value = 3.0;
  EXPECT_EQ(run_cli({"eval", write("h.json", cli::problem_to_json(p).dump()), "--x", "1"}).code, 4);
  EXPECT_EQ(run_cli({"family", "legendre", "--param", "x=0.5", "--x", "40"}).code, 1);
  EXPECT_EQ(run_cli({"bogus"}).code, 1);
  EXPECT_EQ(cli::exit_code(ErrorKind::no_valid_representation), 4);
}

TEST_F(CliTest, JsonOutputIsDeterministic) {
  const std::string file = write_family("laguerre", {{"x", 2.0}});
  for (const char* cmd : {"derive", "eval"}) {
    std::vector<std::string> args{cmd, file, "--format", "json"};
    if (std::string(cmd) == "eval") args.insert(args.end(), {"--x", "0.5,1,3.25", "--verify"});
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out);
  }
}

TEST_F(CliTest, WeightRoundTrip) {
  const std::vector<std::pair<std::string, std::map<std::string, Complex>>> cases = {
      {"gamma", {}},
      {"legendre", {{"x", 0.5}}},
      {"legendre", {{"x", 2.0}}},
      {"hermite", {{"x", 1.0}}},
      {"laguerre", {{"x", 2.0}}},
      {"gauss2f1", {{"b", 0.7}, {"c", 1.9}, {"z", -0.45}}}};
  for (const auto& [name, params] : cases) {
    const auto fam = make_family(name, params);
    const auto r = run_cli({"derive", write_family(name, params), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const WeightForm parsed = cli::weight_from_json(json::parse(r.out)["weight"]);
    const WeightForm original = derive_resolvent(fam.spec).weight;
    for (Complex t : {Complex(0.3, 0.4), Complex(-2.0, 1.0), Complex(5.0, -0.5), Complex(0.0, 3.0)}) {
      const Complex want = weight_eval(original, t);
      EXPECT_LE(std::abs(weight_eval(parsed, t) - want), 1e-12 * std::abs(want)) << name;
    }
  }
}

TEST_F(CliTest, ProblemRoundTrip) {
  const auto r = run_cli({"family", "gauss2f1", "--param", "b=0.7", "--param", "c=1.9", "--param", "z=[-0.45, 0]",
                          "--mode", "problem"});
  ASSERT_EQ(r.code, 0) << r.err;
  const cli::Problem p = cli::parse_problem_text(r.out);
  const auto fam = make_family("gauss2f1", {{"b", 0.7}, {"c", 1.9}, {"z", -0.45}});
  EXPECT_EQ(p.spec.c, fam.spec.c);
  EXPECT_EQ(p.spec.initial_conditions.size(), fam.spec.initial_conditions.size());
  EXPECT_EQ(p.window, fam.window);
}
