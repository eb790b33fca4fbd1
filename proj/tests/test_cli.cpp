#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PLANE_CHROMA_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("plane_chroma_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructColorVerifyFano) {
  EXPECT_EQ(run("construct --method singer --q 2 --out " + path("p")).code, 0);
  EXPECT_EQ(run("color --plane " + path("p") + " --method triples --out " + path("c")).code, 0);
  const auto v = run("--json verify --plane " + path("p") + " --coloring " + path("c"));
  EXPECT_EQ(v.code, 0);
  const auto j = nlohmann::json::parse(v.out);
  EXPECT_EQ(j.at("verdict").at("num_colors"), 2);
  EXPECT_EQ(j.at("command"), "verify");
  EXPECT_TRUE(j.at("seed").is_null());
}

TEST_F(Cli, VerifyRejectsBrokenColoring) {
  ASSERT_EQ(run("construct --method singer --q 3 --out " + path("p")).code, 0);
  ASSERT_EQ(run("color --plane " + path("p") + " --method triples --out " + path("c")).code, 0);
  // move point 12 into class 0
  std::ifstream in(path("c"));
  std::stringstream s;
  s << in.rdbuf();
  std::string text = s.str();
  const auto pos = text.find("\n12 ");
  ASSERT_NE(pos, std::string::npos);
  text = text.substr(0, pos) + "\n12 0\n";
  std::ofstream(path("c")) << text;
  const auto r = run("--json verify --plane " + path("p") + " --coloring " + path("c"));
  EXPECT_EQ(r.code, 2);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("verdict").at("balanced").get<bool>() && j.at("verdict").at("rainbow_free").get<bool>());
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("bounds --q 7").code, 0);
  EXPECT_EQ(run("construct --method singer --q 6 --out " + path("x")).code, 3);
  ASSERT_EQ(run("construct --method singer --q 5 --out " + path("p")).code, 0);
  EXPECT_EQ(run("color --plane " + path("p") + " --method third-cosets --out " + path("c")).code, 3);
  EXPECT_EQ(run("color --plane " + path("missing") + " --method triples --out " + path("c")).code, 1);
  std::ofstream(path("bad")) << "pplane v1\norder two\n";
  EXPECT_EQ(run("verify --plane " + path("bad") + " --coloring " + path("bad")).code, 1);
  EXPECT_EQ(run("randomized --plane " + path("p") + " --mode remark --out " + path("r")).code, 0);  // pigeonhole
}

TEST_F(Cli, BoundsJson) {
  const auto r = run("--json bounds --q 7");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out).at("verdict");
  EXPECT_EQ(j.at("upper_bound"), 19);
  EXPECT_DOUBLE_EQ(j.at("cyclic_lower_bound").at("value").get<double>(), 9.5);
  EXPECT_EQ(j.at("families").at("planar-projective"), 16);
  EXPECT_TRUE(j.at("families").at("affine-ds").is_null());
}

TEST_F(Cli, PlanarRoundTripAndGrid) {
  ASSERT_EQ(run("construct --method planar --q 7 --out " + path("p")).code, 0);
  const auto r = run("--json color --plane " + path("p") + " --method planar-grid --out " + path("c"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("verdict").at("num_colors"), 16);
  std::ofstream(path("f")) << "0 1 4 2 2 4 1\n";  // x^2 over GF(7)
  ASSERT_EQ(run("construct --method planar --q 7 --planar-fn file:" + path("f") + " --out " + path("p2")).code, 0);
  std::ifstream a(path("p")), b(path("p2"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  std::ofstream(path("g")) << "0 1 2 3 4 5 6\n";
  EXPECT_NE(run("construct --method planar --q 7 --planar-fn file:" + path("g") + " --out " + path("p3")).code, 0);
}

TEST_F(Cli, RandomizedEchoesSeed) {
  ASSERT_EQ(run("construct --method singer --q 11 --out " + path("p")).code, 0);
  const auto r = run("--json randomized --plane " + path("p") + " --mode remark --seed 9 --out " + path("c") +
                     " --stats " + path("s.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("seed"), 9);
  EXPECT_TRUE(fs::exists(path("s.json")));
  EXPECT_EQ(run("verify --plane " + path("p") + " --coloring " + path("c")).code, 0);
}

TEST_F(Cli, SearchAndFixtures) {
  const auto d = run("--json search diffset --v 21 --k 5");
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(nlohmann::json::parse(d.out).at("verdict").at("elements"), nlohmann::json({0, 1, 4, 14, 16}));
  ASSERT_EQ(run("construct --method singer --q 2 --out " + path("p")).code, 0);
  const auto c = run("--json search chib --plane " + path("p"));
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out).at("verdict").at("max_colors"), 2);
  const auto f = run("fixtures --which fig2a");
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(f.out.substr(0, f.out.find('\n')), "2 13 13 13 4 14 14");
}
