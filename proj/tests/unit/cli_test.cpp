#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blanket/geometry.hpp"
#include "blanket/io/pbm.hpp"
#include "json.hpp"

namespace blanket::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "rbp_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(CliSolveTest, PlusBpIsOptimalZero) {
  const auto r = call({"solve", "--gen", "plus:3x3", "--k", "3", "--method", "bp"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["objective"], 0);
  EXPECT_EQ(j["status"], "optimal");
  Blanket b;
  for (const auto& q : j["rects"]) b.push_back(Rect{q["left"], q["right"], q["top"], q["bottom"]});
  EXPECT_TRUE(validate_blanket(b, 3).ok());
}

TEST(CliSolveTest, SolidSplitFit) {
  const auto r = call({"solve", "--gen", "solid:2x2", "--k", "1", "--method", "sf"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["objective"], 0);
}

TEST(CliSolveTest, UsageErrors) {
  EXPECT_EQ(call({"solve", "--gen", "plus:3x3", "--k", "-1"}).code, kUsageError);
  EXPECT_EQ(call({"solve", "--gen", "plus:3x3", "--k", "1", "--method", "magic"}).code, kUsageError);
  EXPECT_EQ(call({"solve", "--gen", "plus:3x3", "--input", "x.pbm", "--k", "1"}).code, kUsageError);
  EXPECT_EQ(call({"solve", "--k", "1"}).code, kUsageError);
  EXPECT_EQ(call({"solve", "--gen", "plus:3x3"}).code, kUsageError);
  EXPECT_EQ(call({"solve", "--gen", "blob:3x3", "--k", "1"}).code, kUsageError);
  EXPECT_EQ(call({"solve", "--gen", "plus:3x3", "--k", "1", "--rule", "3"}).code, kUsageError);
  EXPECT_EQ(call({"frobnicate"}).code, kUsageError);
  EXPECT_EQ(call({}).code, kUsageError);
}

TEST(CliSolveTest, UnreadableInputIsAnError) {
  const auto r = call({"solve", "--input", "/nonexistent/x.pbm", "--k", "1"});
  EXPECT_EQ(r.code, kSolverError);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST(CliSolveTest, WritesFiles) {
  const auto pbm = scratch("plus.pbm");
  ASSERT_EQ(call({"gen", "plus:5x5", "--out", pbm.string(), "--raw"}).code, kOk);
  EXPECT_EQ(io::load_pbm_file(pbm.string()).area(), 21);
  const auto json = scratch("out.json");
  const auto svg = scratch("out.svg");
  const auto trace = scratch("trace.csv");
  const auto r = call({"solve", "--input", pbm.string(), "--k", "2", "--out", json.string(), "--svg",
                       svg.string(), "--trace", trace.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(json));
  EXPECT_EQ(j["width"], 5);
  const auto svg_text = slurp(svg);
  std::size_t rects = 0;
  for (std::size_t p = svg_text.find("<rect "); p != std::string::npos; p = svg_text.find("<rect ", p + 1)) ++rects;
  EXPECT_EQ(rects, j["rects"].size());
  EXPECT_EQ(slurp(trace).rfind("node,", 0), 0u);
}

TEST(CliSolveTest, DeterministicJsonPerMethod) {
  for (const std::string m : {"bp", "sf", "fast", "csa"}) {
    const std::vector<std::string> args = {"solve", "--gen", "random:9x9:4:0.5", "--k", "3", "--method", m, "--seed", "11"};
    const auto a = call(args);
    const auto b = call(args);
    ASSERT_EQ(a.code, kOk) << a.err;
    EXPECT_EQ(a.out, b.out) << m;
  }
}

TEST(CliBenchTest, BuiltinSuitePdNonNegative) {
  const auto r = call({"bench", "--suite", "builtin", "--k", "1,2,3", "--methods", "bp,sf,fast,csa",
                       "--time-limit", "60"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.substr(line.rfind(',') + 1), "pd");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const std::string pd = line.substr(line.rfind(',') + 1);
    if (pd.empty()) continue;
    if (pd.front() == '(') {
      EXPECT_EQ(pd.back(), ')');
    } else {
      EXPECT_GE(std::stod(pd), 0.0) << line;
    }
  }
  EXPECT_EQ(rows, 8 * 3 * 4);
}

TEST(CliBenchTest, UsageErrors) {
  EXPECT_EQ(call({"bench", "--methods", ""}).code, kUsageError);
  EXPECT_EQ(call({"bench", "--methods", "sf", "--k", "1"}).code, kUsageError);
  EXPECT_EQ(call({"bench", "--suite", "/nonexistent/dir", "--k", "1"}).code, kUsageError);
  EXPECT_EQ(call({"bench", "--methods", "sf", "--k", "1", "--no-pd"}).code, kOk);
}

TEST(CliBenchTest, DirectorySuite) {
  const auto dir = scratch("suite");
  fs::create_directories(dir);
  ASSERT_EQ(call({"gen", "plus:3x3", "--out", (dir / "b_plus.pbm").string()}).code, kOk);
  ASSERT_EQ(call({"gen", "solid:2x2", "--out", (dir / "a_solid.pbm").string()}).code, kOk);
  const auto csv = scratch("bench.csv");
  ASSERT_EQ(call({"bench", "--suite", dir.string(), "--k", "1", "--methods", "bp,fast", "--csv", csv.string()}).code, kOk);
  const auto text = slurp(csv);
  EXPECT_LT(text.find("a_solid"), text.find("b_plus"));
}

}  // namespace
}  // namespace blanket::cli
