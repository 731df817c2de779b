#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CRAWFORD_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  const int st = pclose(p);
  return {WEXITSTATUS(st), out};
}

std::string demo(const char* name) { return std::string(CRAWFORD_DEMO_DATA) + "/" + name; }

std::string temp(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::string write_matrix(const char* name, const std::string& json) {
  const auto path = temp(name);
  std::ofstream(path) << json;
  return path;
}

} // namespace

TEST(Cli, ChiJson) {
  const auto r = run("chi " + demo("example_2x2.json") + " --center=-3-i --eps 1e-6 --json");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["chi"].get<double>(), 1.9230539, 2e-6);
  EXPECT_EQ(j["method"], "sdp");
  EXPECT_EQ(j["epsilon"].get<double>(), 1e-6);
  EXPECT_GT(j["iterations"].get<int>(), 0);
  ASSERT_TRUE(j["z"].is_array());
  EXPECT_EQ(j["z"].size(), 2u);
}

TEST(Cli, ChiPlainAndMethods) {
  const auto r = run("chi " + demo("identity_2.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1.0000"), std::string::npos) << r.out;
  const auto o = run("chi " + demo("example_2x2.json") + " --center=-3-i --eps 1e-4 --method oracle --json");
  ASSERT_EQ(o.status, 0);
  EXPECT_NEAR(nlohmann::json::parse(o.out)["chi"].get<double>(), 1.9230539, 1e-4);
  const auto z = run("chi " + demo("zero_2.json") + " --json");
  ASSERT_EQ(z.status, 0);
  EXPECT_EQ(nlohmann::json::parse(z.out)["chi"].get<double>(), 0.0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("chi /nonexistent.json").status, 4);
  EXPECT_EQ(run("chi " + demo("identity_2.json") + " --eps 2").status, 2);
  EXPECT_EQ(run("chi " + demo("identity_2.json") + " --center=abc").status, 2);
  EXPECT_EQ(run("chi " + demo("identity_2.json") + " --method simplex").status, 2);
  const auto bad = write_matrix("crawford_cli_bad.json", R"({"n":2,"entries":[["1"]]})");
  EXPECT_EQ(run("chi " + bad).status, 2);
  EXPECT_EQ(run("export " + demo("zero_2.json") + " --out " + temp("crawford_zero.dat-s")).status, 2);
}

TEST(Cli, ExportMatchesGolden) {
  const auto out = temp("crawford_cli_export.dat-s");
  const auto r = run("export " + demo("example_2x2.json") + " --center=-3-i --out " + out);
  ASSERT_EQ(r.status, 0) << r.out;
  std::ifstream a(out), b(std::string(CRAWFORD_TEST_DATA) + "/golden/example_2x2.dat-s");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(r.out.find("24"), std::string::npos);
}

TEST(Cli, ExportSizes) {
  // mDIM = n^2 + 7n + 6.
  const std::pair<int, const char*> cases[] = {
      {36, R"({"n":3,"entries":[["1","0","0"],["0","2i","0"],["0","0","3"]]})"},
      {14, R"({"n":1,"entries":[["3+4i"]]})"},
  };
  for (const auto& [mdim, json] : cases) {
    const auto in = write_matrix("crawford_cli_size.json", json);
    const auto out = temp("crawford_cli_size.dat-s");
    ASSERT_EQ(run("export " + in + " --out " + out).status, 0);
    std::ifstream f(out);
    int first = 0;
    f >> first;
    EXPECT_EQ(first, mdim);
  }
}

TEST(Cli, RangeCsvAndSvg) {
  const auto svg = temp("crawford_cli_range.svg");
  const auto r = run("range " + demo("example_2x2.json") + " --samples 90 --svg " + svg);
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 90);
  EXPECT_TRUE(std::filesystem::exists(svg));
  EXPECT_EQ(run("range " + demo("example_2x2.json") + " --samples 2").status, 2);
}

TEST(Cli, Verify) {
  const auto ex = run("verify " + demo("example_2x2.json") + " --center=-3-i --eps 1e-4");
  EXPECT_EQ(ex.status, 0) << ex.out;
  EXPECT_NE(ex.out.find("sdp_vs_oracle"), std::string::npos);
  const auto rnd = write_matrix("crawford_cli_n3.json",
                                R"({"n":3,"entries":[["1+i","2","-i"],["0","3","1-2i"],["-1","2i","-2+i"]]})");
  EXPECT_EQ(run("verify " + rnd + " --eps 1e-4 --seed 42").status, 0);
  EXPECT_EQ(run("verify " + demo("zero_2.json")).status, 0);
}
