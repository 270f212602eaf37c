#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(PAIRLINK_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pairlink_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    graph_ = (dir_ / "g.tsv").string();
    ASSERT_EQ(run("gen-gpa --steps 500 --seed 4 --timestamps --out " + graph_), 0);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string graph_;
};

}  // namespace

TEST_F(Cli, PairwiseCsvIndependentOfThreads) {
  const std::string base = "pairwise --input " + graph_ + " --timestamps --trials 40 --seed 9 --methods pairseed,trpr,js";
  ASSERT_EQ(run(base + " --threads 1 --out " + out("a")), 0);
  ASSERT_EQ(run(base + " --threads 3 --out " + out("b")), 0);
  ASSERT_EQ(run(base + " --threads 1 --out " + out("c")), 0);
  EXPECT_EQ(slurp(out("a_summary.csv")), slurp(out("b_summary.csv")));
  EXPECT_EQ(slurp(out("a_trials.csv")), slurp(out("b_trials.csv")));
  EXPECT_EQ(slurp(out("a_trials.csv")), slurp(out("c_trials.csv")));
  const auto summary = slurp(out("a_summary.csv"));
  EXPECT_EQ(summary.rfind("method,k,trials,discards,mean_sp\n", 0), 0u);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 1 + 3 * 2);
  EXPECT_TRUE(fs::exists(out("a_meta.json")));
}

TEST_F(Cli, ProtocolsRun) {
  EXPECT_EQ(run("pairwise --input " + graph_ + " --timestamps --protocol loeto --k 5 --trials 10 --out " + out("l")), 0);
  EXPECT_EQ(run("pairwise --input " + graph_ + " --protocol temporal --fraction 0.8 --truth-mode or --trials 10 --out " +
                out("t")),
            0);
  EXPECT_EQ(run("linkpred --input " + graph_ + " --timestamps --num-nodes 10 --out " + out("lp")), 0);
  const auto summary = slurp(out("lp_summary.csv"));
  EXPECT_EQ(summary.rfind("method,mean_auc,mean_delta_vs_baseline,mean_dist_to_diag\n", 0), 0u);
  EXPECT_EQ(run("diagnose --input " + graph_ + " --timestamps --max-iters 50 --out " + out("d")), 0);
  EXPECT_NE(slurp(out("d_diagnostics.csv")).find("\n10-vs-50,,"), std::string::npos);
  EXPECT_EQ(run("triangles --input " + graph_ + " --timestamps"), 0);
}

TEST_F(Cli, ConfigFileAndOverride) {
  {
    std::ofstream cfg(out("c.json"));
    cfg << R"({"trials": 7, "methods": ["pairseed", "aa"], "k": [5], "timestamps": true})";
  }
  ASSERT_EQ(run("pairwise --input " + graph_ + " --config " + out("c.json") + " --trials 3 --out " + out("x")), 0);
  const auto trials = slurp(out("x_trials.csv"));
  EXPECT_EQ(std::count(trials.begin(), trials.end(), '\n'), 1 + 3 * 2);
  std::ofstream bad(out("bad.json"));
  bad << R"({"no-such-flag": 1})";
  bad.close();
  EXPECT_EQ(run("pairwise --input " + graph_ + " --config " + out("bad.json")), 1);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("pairwise --no-such-flag"), 1);
  EXPECT_EQ(run("pairwise --input " + graph_ + " --timestamps --methods katz"), 1);
  EXPECT_EQ(run("pairwise --input " + out("missing.tsv")), 2);
  // Three columns without --timestamps is a malformed line.
  EXPECT_EQ(run("pairwise --input " + graph_), 2);
  EXPECT_EQ(run("--help"), 0);
}
