#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fusion/fusion.hpp"
#include "rings.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fusionctl_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& f) const { return (dir_ / f).string(); }

  // Runs fusionctl with stdout and stderr captured to files; returns the exit code.
  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + FUSIONCTL_PATH + "\" " + args + " > \"" + path("stdout") +
                            "\" 2> \"" + path("stderr") + "\"";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }

  std::string slurp(const std::string& f) const {
    std::ifstream in(path(f));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  json load(const std::string& f) const { return json::parse(slurp(f)); }

  void write(const std::string& f, const std::string& text) const { std::ofstream(path(f)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EnumerateCounts) {
  ASSERT_EQ(run("-o " + path("r1.json") + " enumerate -r 1 -m 1-5 -q"), 0);
  EXPECT_EQ(load("r1.json").size(), 1u);
  ASSERT_EQ(run("-o " + path("r4.json") + " enumerate -r 4 -m 1 -q"), 0);
  EXPECT_EQ(load("r4.json").size(), 10u);
  ASSERT_EQ(run("-o " + path("r14.json") + " enumerate -r 1-4 -q"), 0);
  EXPECT_EQ(load("r14.json").size(), 17u);
  ASSERT_EQ(run("--format catalog enumerate -r 3 -q"), 0);
  EXPECT_EQ(load("stdout").size(), 4u);
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  ASSERT_EQ(run("--threads 1 -o " + path("a.json") + " enumerate -r 6 -q"), 0);
  ASSERT_EQ(run("--threads 4 -o " + path("b.json") + " enumerate -r 6 -q"), 0);
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  EXPECT_EQ(load("a.json").size(), 39u);
}

TEST_F(Cli, CheckpointResume) {
  ASSERT_EQ(run("-o " + path("full.json") + " enumerate -r 5 -q"), 0);
  const std::string ck = path("ck.txt");
  int rc = 4, rounds = 0;
  while (rc == 4 && rounds < 500) {
    rc = run("--checkpoint " + ck + " -o " + path("part.json") + " enumerate -r 5 -q --node-budget 2000");
    ++rounds;
    if (rounds == 1) {
      EXPECT_EQ(rc, 4);
      EXPECT_TRUE(fs::exists(ck));
    }
  }
  ASSERT_EQ(rc, 0);
  EXPECT_GT(rounds, 1);
  EXPECT_FALSE(fs::exists(ck));
  EXPECT_EQ(slurp("full.json"), slurp("part.json"));
  // A checkpoint for another rank is a configuration error.
  ASSERT_EQ(run("--checkpoint " + ck + " enumerate -r 6 -q --node-budget 10"), 4);
  EXPECT_EQ(run("--checkpoint " + ck + " enumerate -r 5 -q"), 2);
}

TEST_F(Cli, NamingIsIdempotent) {
  ASSERT_EQ(run("-o " + path("c.json") + " enumerate -r 1-4 -m 1-2 -q"), 0);
  ASSERT_EQ(run("-o " + path("n1.json") + " name " + path("c.json")), 0);
  ASSERT_EQ(run("-o " + path("n2.json") + " name " + path("n1.json")), 0);
  EXPECT_EQ(slurp("n1.json"), slurp("n2.json"));
  const json names = load("n1.json");
  EXPECT_EQ(names[2]["name"], "FR^{2,0}_2");
}

TEST_F(Cli, AnalyzeNonCommutative) {
  write("hecke.json", fusion::ring_to_json(testing_rings::hecke_ring()).dump());
  ASSERT_EQ(run("-o " + path("a.json") + " analyze " + path("hecke.json")), 0);
  const json a = load("a.json");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0]["cspc"], "n/a");
  EXPECT_EQ(a[0]["commutative"], false);
  EXPECT_TRUE(a[0]["modular_data"].is_null());
  EXPECT_EQ(a[0]["subring_count"], 4u);  // {1}, two Fibonacci, everything
}

TEST_F(Cli, AnalyzeCommutative) {
  write("fib.json", fusion::ring_to_json(testing_rings::fibonacci()).dump());
  ASSERT_EQ(run("-o " + path("a.json") + " analyze " + path("fib.json")), 0);
  const json a = load("a.json")[0];
  EXPECT_EQ(a["global_dimension"].get<std::string>().substr(0, 12), "3.6180339887");
  EXPECT_EQ(a["zsc"], "clear");
  EXPECT_EQ(a["cspc"], "clear");
  EXPECT_EQ(a["modular_data"], 2);
}

TEST_F(Cli, ExitCodes) {
  write("bad.json", R"({"rank": 2, "dual": [1, 2], "N": [[[1,0],[0,1]],[[0,1],[0,0]]]})");
  EXPECT_EQ(run("validate " + path("bad.json")), 1);
  EXPECT_EQ(run("validate " + path("missing.json")), 3);
  EXPECT_EQ(run("enumerate -r x"), 2);
  EXPECT_EQ(run("--threads 0 enumerate -r 2"), 2);
  EXPECT_EQ(run("--precision 10 enumerate -r 2"), 2);
  EXPECT_EQ(run("nosuchcommand"), 2);
  write("fib.json", fusion::ring_to_json(testing_rings::fibonacci()).dump());
  EXPECT_EQ(run("validate " + path("fib.json")), 0);
  EXPECT_EQ(run("--checkpoint " + path("ck") + " enumerate -r 6 -q --node-budget 5"), 4);
  EXPECT_EQ(run("-o /nonexistent/dir/out.json enumerate -r 2 -q"), 3);
}

TEST_F(Cli, Construct) {
  ASSERT_EQ(run("-o " + path("hi.json") + " construct hi Z3"), 0);
  const auto hi = fusion::ring_from_json(load("hi.json"));
  EXPECT_TRUE(fusion::equivalent(hi, fusion::haagerup_izumi(fusion::cyclic_group(3))).has_value());
  ASSERT_EQ(run("-o " + path("ty.json") + " construct ty Z2"), 0);
  EXPECT_EQ(fusion::ring_from_json(load("ty.json")).rank(), 3);
  ASSERT_EQ(run("-o " + path("s.json") + " construct song D3 1,2,3 id 1 0"), 0);
  const auto s = fusion::ring_from_json(load("s.json"));
  EXPECT_EQ(s.rank(), 8);
  EXPECT_FALSE(fusion::is_commutative(s));
  EXPECT_EQ(run("construct hi D3"), 2);
}
