#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "lmo/document.hpp"
#include "support/fixtures.hpp"

namespace lmo {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lmo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) const {
    const fs::path out = dir_ / "stdout";
    const fs::path err = dir_ / "stderr";
    const std::string cmd =
        std::string(LMO_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  static std::string example() { return test::data_path("example_density.json"); }

  fs::path dir_;
};

TEST_F(Cli, AnalyzeExample) {
  const Outcome r = run("analyze " + example() + " --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out).at("report");
  EXPECT_NEAR(rep["alpha"][0][1].get<double>(), 0.375, 1e-12);
  EXPECT_NEAR(rep["gamma"][0][1].get<double>(), 0.5 * 0.375 + 0.5 / std::sqrt(1.2 * 2.2), 1e-12);
  EXPECT_NEAR(rep["gamma"][0][2].get<double>(), 0.0, 1e-9);
  EXPECT_EQ(rep["partition"], json::parse(R"([["1","2"],["3"]])"));
  EXPECT_EQ(rep["profile"]["hypotheses"], 8);
  EXPECT_EQ(rep["profile"]["densities"], json::parse("[3,3,1]"));
  const auto card = rep["cardinality"];
  EXPECT_NEAR(card[3].get<double>(), 0.63, 1e-15);
}

TEST_F(Cli, AnalyzeHumanReadable) {
  const Outcome r = run("analyze " + example());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.495229"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("{1,2}"), std::string::npos);
}

TEST_F(Cli, AnalyzeSingleLabel) {
  const std::string f = write("one.json", R"({"label_space": ["a"], "state_dim": 1, "hypotheses": [
    {"labels": [], "weight": 0.5}, {"labels": ["a"], "weight": 0.5, "mean": [0], "cov": [[1]]}]})");
  const Outcome r = run("analyze " + f + " --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out).at("report");
  EXPECT_EQ(rep["partition"], json::parse(R"([["a"]])"));
  EXPECT_EQ(rep["gamma"], json::parse("[[null]]"));
}

TEST_F(Cli, AnalyzeRejectsWeightsOffTheSimplex) {
  EXPECT_EQ(run("analyze " + example() + " --omega-e 0.7 --omega-s 0.7").code, 1);
}

TEST_F(Cli, ApproximateProfiles) {
  struct Row {
    const char* method;
    int t0;
    const char* densities;
    bool loss;
  };
  for (const Row& row : {Row{"dglmb", 8, "[12,0,0]", true}, Row{"ca", 4, "[3,1,0]", false},
                         Row{"ca-of-dglmb", 4, "[5,0,0]", true}, Row{"mdglmb", 8, "[12,0,0]", true}}) {
    const Outcome r = run("approximate " + example() + " --method " + row.method + " --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const json env = json::parse(r.out);
    EXPECT_EQ(env["report"]["profile"]["hypotheses"], row.t0) << row.method;
    EXPECT_EQ(env["report"]["profile"]["densities"], json::parse(row.densities)) << row.method;
    EXPECT_EQ(env["report"]["profile"]["correlation_loss"], row.loss) << row.method;
    const auto back = parse_document(env["density"].dump());
    EXPECT_TRUE(validate(back).empty()) << row.method;
  }
}

TEST_F(Cli, ApproximateWritesDocumentAndProfile) {
  const std::string out = (dir_ / "ca.json").string();
  const Outcome r = run("approximate " + example() + " --method ca -o " + out);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("T0 (hypotheses)   4"), std::string::npos) << r.err;
  const auto doc = read_document(out);
  EXPECT_TRUE(std::holds_alternative<FactorizedDensity>(doc));
  const Outcome k = run("kld " + example() + " " + out + " --json");
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_LT(std::abs(json::parse(k.out)["report"]["value"].get<double>()), 1e-6);
}

TEST_F(Cli, ApproximateUnknownMethodIsUsageError) {
  const Outcome r = run("approximate " + example() + " --method lmb");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("lmb"), std::string::npos);
}

TEST_F(Cli, MarginalOntoOneTwo) {
  const Outcome r = run("marginal " + example() + " --labels 1,2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = as_labeled(parse_document(r.out));
  EXPECT_DOUBLE_EQ(existence_weight(d, {}), 0.1);
  EXPECT_DOUBLE_EQ(existence_weight(d, {"1"}), 0.1);
  EXPECT_DOUBLE_EQ(existence_weight(d, {"2"}), 0.1);
  EXPECT_DOUBLE_EQ(existence_weight(d, {"1", "2"}), 0.7);
  const auto& g = d.find({"1", "2"})->conditional->components;
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].block.mean, Eigen::Vector2d(1.1, 1.2));
}

TEST_F(Cli, MarginalOntoThree) {
  const Outcome r = run("marginal " + example() + " --labels 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = as_labeled(parse_document(r.out));
  EXPECT_DOUBLE_EQ(existence_weight(d, {"3"}), 0.9);
  const auto& g = d.find({"3"})->conditional->components.at(0).block;
  EXPECT_EQ(g.mean(0), 8.0);
  EXPECT_EQ(g.cov(0, 0), 3.0);
}

TEST_F(Cli, MarginalOntoFullSpaceIsCanonicalInput) {
  const Outcome r = run("marginal " + example() + " --labels 3,2,1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, dump_document(read_document(example())));
}

TEST_F(Cli, MarginalDispatchesOnKind) {
  const std::string dg = (dir_ / "dg.json").string();
  ASSERT_EQ(run("approximate " + example() + " --method dglmb -o " + dg).code, 0);
  const Outcome r = run("marginal " + dg + " --labels 1,2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::holds_alternative<DeltaGlmbDensity>(parse_document(r.out)));
}

TEST_F(Cli, MarginalUnknownLabelIsUsageError) {
  const Outcome r = run("marginal " + example() + " --labels 1,7");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'7'"), std::string::npos);
}

TEST_F(Cli, KldSelfIsZero) {
  const Outcome r = run("kld " + example() + " " + example() + " --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out)["report"];
  EXPECT_EQ(rep["value"].get<double>(), 0.0);
  EXPECT_EQ(rep["method"], "closed-form");
}

TEST_F(Cli, KldClosedFormAgreesWithGrid) {
  const std::string dg = (dir_ / "dg.json").string();
  ASSERT_EQ(run("approximate " + example() + " --method dglmb -o " + dg).code, 0);
  const Outcome closed = run("kld " + example() + " " + dg + " --json");
  const Outcome grid = run("kld " + example() + " " + dg + " --oracle grid --json");
  ASSERT_EQ(closed.code, 0) << closed.err;
  ASSERT_EQ(grid.code, 0) << grid.err;
  const double a = json::parse(closed.out)["report"]["value"].get<double>();
  const double b = json::parse(grid.out)["report"]["value"].get<double>();
  EXPECT_EQ(json::parse(grid.out)["report"]["method"], "grid");
  EXPECT_NEAR(a, b, 1e-3);
}

TEST_F(Cli, SampledKldRequiresSeedAndIsReproducible) {
  const std::string dg = (dir_ / "dg.json").string();
  ASSERT_EQ(run("approximate " + example() + " --method dglmb -o " + dg).code, 0);
  const Outcome missing = run("kld " + example() + " " + dg + " --oracle mc");
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--seed"), std::string::npos);
  const std::string args = "kld " + example() + " " + dg + " --oracle mc --seed 11 --samples 20000 --json";
  const Outcome a = run(args);
  const Outcome b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["report"]["seed"], 11);
  EXPECT_GT(json::parse(a.out)["report"]["std_error"].get<double>(), 0.0);
}

TEST_F(Cli, MixtureInputsNeedASeed) {
  const std::string m = (dir_ / "m.json").string();
  ASSERT_EQ(run("marginal " + example() + " --labels 1 -o " + m).code, 0);
  const Outcome r = run("kld " + m + " " + m);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(run("kld " + m + " " + m + " --seed 3").code, 0);
}

TEST_F(Cli, KldMismatchedSpacesIsInvalidInput) {
  const std::string m = (dir_ / "m.json").string();
  ASSERT_EQ(run("marginal " + example() + " --labels 1,2 -o " + m).code, 0);
  const Outcome r = run("kld " + example() + " " + m);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("label space"), std::string::npos);
}

TEST_F(Cli, ParseErrorsAreInvalidInputWithLines) {
  const std::string f = write("bad.json", "{\n  \"label_space\": [\"a\"],\n  \"state_dim\": 1,\n  \"extra\": 2,\n  \"hypotheses\": []\n}\n");
  const Outcome r = run("analyze " + f);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.json:4:"), std::string::npos) << r.err;
}

TEST_F(Cli, ValidationFailureIsInvalidInput) {
  const std::string f = write("norm.json", R"({"label_space": ["a"], "state_dim": 1, "hypotheses": [
    {"labels": [], "weight": 0.5}, {"labels": ["a"], "weight": 0.4, "mean": [0], "cov": [[1]]}]})");
  const Outcome r = run("analyze " + f);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("normalization"), std::string::npos) << r.err;
}

TEST_F(Cli, SingularReferenceIsNumericalFailure) {
  const std::string f = write("f.json", R"({"label_space": ["a", "b"], "state_dim": 1, "hypotheses": [
    {"labels": ["a", "b"], "weight": 1, "mean": [0, 0], "cov": [[1, 0], [0, 1]]}]})");
  const std::string g = write("g.json", R"({"label_space": ["a", "b"], "state_dim": 1, "hypotheses": [
    {"labels": ["a", "b"], "weight": 1, "mean": [1, 1], "cov": [[1, 1], [1, 1]]}]})");
  const Outcome r = run("kld " + f + " " + g + " --seed 1");
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  const Outcome reverse = run("kld " + g + " " + f + " --seed 1 --json");
  ASSERT_EQ(reverse.code, 0) << reverse.err;
  EXPECT_EQ(json::parse(reverse.out)["report"]["value"], "inf");
}

TEST_F(Cli, MissingFileAndSubcommand) {
  EXPECT_EQ(run("analyze " + (dir_ / "nope.json").string()).code, 2);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  for (const std::string& args : {"analyze " + example() + " --json",
                                 "approximate " + example() + " --method ca-of-dglmb --json",
                                 "marginal " + example() + " --labels 2 --json"}) {
    const Outcome a = run(args);
    const Outcome b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

}  // namespace
}  // namespace lmo
