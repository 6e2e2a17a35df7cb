#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "pchc/cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pchc::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pchc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, BollobasErdosHasNoHamCycle) {
  ASSERT_EQ(run({"gen", "--family", "be", "--k", "1", "--out", file("g.txt")}).code, 0);
  const auto r = run({"oracle", "--query", "hamcycle", "--input", file("g.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["status"], "NotExists");
}

TEST_F(Cli, VerifyCertificate) {
  ASSERT_EQ(run({"gen", "--family", "random", "--n", "12", "--dmax", "4", "--seed", "3", "--out",
                 file("g.txt")}).code,
            0);
  const auto solved = run({"oracle", "--query", "hamcycle", "--input", file("g.txt")});
  ASSERT_EQ(solved.code, 0);
  write("c.json", json::parse(solved.out)["certificate"].dump());
  const auto ok = run({"verify", "--input", file("g.txt"), "--cert", file("c.json")});
  EXPECT_EQ(ok.code, 0);
  auto bad = json::parse(solved.out)["certificate"];
  auto& cyc = bad["cycles"][0];
  std::swap(cyc[0], cyc[1]);
  std::swap(cyc[1], cyc[5]);
  write("bad.json", bad.dump());
  const auto v = run({"verify", "--input", file("g.txt"), "--cert", file("bad.json")});
  EXPECT_EQ(v.code, json::parse(v.out)["verdict"] == "Valid" ? 0 : 1);
  EXPECT_EQ(v.code, 1);
}

TEST_F(Cli, ParseErrorsExitTwo) {
  write("bad.txt", "3 2\n0 1a\n1\n");
  const auto r = run({"oracle", "--query", "hamcycle", "--input", file("bad.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
  EXPECT_NE(r.err.find(":2:"), std::string::npos);
  EXPECT_EQ(run({"oracle", "--query", "hamcycle", "--input", file("missing.txt")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve", "--method", "magic", "--input", file("bad.txt")}).code, 2);
}

TEST_F(Cli, ConstantsReport) {
  const auto r = run({"constants", "--eps", "0.1"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["rotation_depth_cap"], 9);
  EXPECT_EQ(j["ifar_cap"], 200);
  EXPECT_EQ(run({"constants", "--eps", "0.3"}).code, 2);
}

TEST_F(Cli, SolveWritesReport) {
  ASSERT_EQ(run({"gen", "--family", "random", "--n", "20", "--dmax", "6", "--seed", "2", "--out",
                 file("g.txt")}).code,
            0);
  const auto r = run({"solve", "--method", "pipeline", "--input", file("g.txt"), "--seed", "4",
                      "--fallback", "exact", "--report", file("r.json")});
  std::ifstream in(file("r.json"));
  const auto j = json::parse(in);
  EXPECT_EQ(j["seed"], 4);
  EXPECT_EQ(j["instance"]["n"], 20);
  EXPECT_TRUE(j.contains("timings_ms"));
  EXPECT_EQ(r.code, j["verdict"] == "Found" ? 0 : 1);

  const auto rot = run({"solve", "--method", "rotation", "--input", file("g.txt")});
  const auto jr = json::parse(rot.out);
  EXPECT_EQ(rot.code, jr.contains("certificate") ? 0 : 1);
  EXPECT_TRUE(jr["stats"].contains("z_layer_sizes"));
}

TEST_F(Cli, ReportsAreReproducible) {
  ASSERT_EQ(run({"gen", "--family", "random", "--n", "14", "--dmax", "5", "--seed", "9", "--out",
                 file("g.txt")}).code,
            0);
  auto a = json::parse(run({"solve", "--method", "rotation", "--input", file("g.txt"), "--seed", "3"}).out);
  auto b = json::parse(run({"solve", "--method", "rotation", "--input", file("g.txt"), "--seed", "3"}).out);
  a.erase("timings_ms");
  b.erase("timings_ms");
  EXPECT_EQ(a, b);
}

TEST_F(Cli, GenRoundTripsThroughStdout) {
  const auto a = run({"gen", "--family", "layered", "--n", "9", "--l", "4"});
  ASSERT_EQ(a.code, 0);
  write("g.txt", a.out);
  const auto r = run({"oracle", "--query", "longest-cycle", "--input", file("g.txt")});
  EXPECT_EQ(json::parse(r.out)["value"], 7);
}

TEST_F(Cli, LemmaCheckAbspathSmall) {
  const auto r = run({"lemma-check", "--lemma", "abspath", "--n", "40", "--eps", "0.1", "--seeds", "2",
                      "--quads", "5"});
  const auto j = json::parse(r.out);
  EXPECT_EQ(r.code, j["pass"].get<bool>() ? 0 : 1);
  EXPECT_EQ(j["instances"].size(), 2u);
  EXPECT_EQ(run({"lemma-check", "--lemma", "nope"}).code, 2);
}

TEST_F(Cli, BudgetExhaustionIsNotADefiniteAnswer) {
  ASSERT_EQ(run({"gen", "--family", "be", "--k", "3", "--out", file("g.txt")}).code, 0);
  const auto r = run({"oracle", "--query", "hamcycle", "--input", file("g.txt"), "--budget-nodes", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["status"], "BudgetExhausted");
}
