#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LOXO_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, Psi) {
  const Result r = run("psi --n 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 28);
  EXPECT_EQ(r.out.substr(0, 13), "1\tx1 x2' x1'\n");
  const Result j = run("psi --n 3 --format json");
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)["entries"].size(), 126u);
  EXPECT_EQ(run("psi --n 1").code, 2);
}

TEST(Cli, Relations) {
  const Result r = run("relations --n 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 60);
  const Result c = run("relations --n 2 --check");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("invalid 0"), std::string::npos);
  EXPECT_EQ(lines(run("relations --n 3").out), 270);
  const Result d = run("relations --n 2 --dominant --format json");
  EXPECT_EQ(nlohmann::json::parse(d.out).size(), 28u);
}

TEST(Cli, RelationsPointEvaluation) {
  const std::string path = testing::TempDir() + "cli_point.txt";
  {
    std::ofstream f(path);
    f.precision(17);
    for (int i = 0; i < 28; ++i) f << 1.0 / 28 << ' ';
  }
  const Result r = run("relations --n 2 --dominant --point " + path + " --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["max"].get<double>(), 81.0, 1e-9);
  EXPECT_EQ(run("relations --n 3 --point " + path).code, 2);
  std::remove(path.c_str());
}

TEST(Cli, Solve) {
  const Result r = run("solve --n 2 --method both --format json");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["analytic"]["alpha"].get<double>(), 24.8692, 1e-4);
  EXPECT_TRUE(j["agreement"]["agree"].get<bool>());
  const Result t = run("solve --n 2");
  EXPECT_NE(t.out.find("1.6068"), std::string::npos);
  EXPECT_NE(t.out.find("1.5937"), std::string::npos);
  EXPECT_EQ(run("solve --n 2 --method bogus").code, 2);
}

TEST(Cli, Audit) {
  const Result s = run("audit --schottky --count 50 --seed 7 --format json");
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(nlohmann::json::parse(s.out)["reports"].size(), 50u);
  const Result x = run("audit --xi \"2,0,0,0,0,0,0.5,0\" --eta \"1,0,1,0,1,0,2,0\" --format json");
  EXPECT_EQ(x.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(x.out)["reports"][0]["report"]["jorgensen"].get<double>(), 4.5, 1e-9);
  EXPECT_EQ(run("audit --xi \"2,0,0,0,0,0,0.5,0\" --eta \"3,0,0,0,0,0,0.3333333333333333,0\"").code, 2);
  EXPECT_EQ(run("audit").code, 2);
}

TEST(Cli, VerifyRows) {
  const Result o = run("verify --suite relations");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("count=60"), std::string::npos);
  const Result g = run("verify --suite geometry");
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("trace identity"), std::string::npos);
  EXPECT_EQ(run("verify --suite nope").code, 2);
}

TEST(Cli, UsageAndDeterminism) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("psi").code, 2);
  EXPECT_EQ(run("solve --n 2 --method both --seed 3").out, run("solve --n 2 --method both --seed 3").out);
  EXPECT_EQ(run("audit --schottky --count 5 --seed 2 --format csv").out,
            run("audit --schottky --count 5 --seed 2 --format csv").out);
}

TEST(Cli, ConfigAndOutputFile) {
  const std::string cfg = testing::TempDir() + "cli.toml";
  const std::string out = testing::TempDir() + "cli_out.json";
  {
    std::ofstream f(cfg);
    f << "format = \"json\"\n";
  }
  const Result r = run("--config " + cfg + " solve --n 2 --output " + out);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  EXPECT_NEAR(nlohmann::json::parse(f)["analytic"]["alpha"].get<double>(), 24.8692, 1e-4);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}
