#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = qtoda::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Coeff) {
  CliRun r = run({"coeff", "--r", "2", "--n", "1,1", "--q", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["value"], "24");
  EXPECT_EQ(j["job"]["command"], "coeff");
  EXPECT_EQ(j["job"]["q"], "1/2");
}

TEST(Cli, Enumerate) {
  CliRun r = run({"enumerate", "--lambda", "2,1", "--n", "1,1", "--q", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["arrays"].size(), 2u);
}

TEST(Cli, EnumerateFromSigmaFile) {
  std::string path = testing::TempDir() + "sigma.json";
  std::ofstream(path) << "[[0,0,2],[0,2,2],[2,2,2]]";
  CliRun r = run({"enumerate", "--lambda", "3,3,3", "--mu", "2,2", "--q", "2/3", "--alpha", "1,0,1", "--sigma", path});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_GT(j["count"].get<int>(), 1);
  EXPECT_EQ(j["job"]["sigma"], json::parse("[[0,0,2],[0,2,2],[2,2,2]]"));
  std::remove(path.c_str());
}

TEST(Cli, IdentitiesSuitePasses) {
  CliRun r = run({"check", "--suite", "identities", "--trials", "50", "--seed", "7"});
  EXPECT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const auto& c : j["results"]) {
    EXPECT_TRUE(c.contains("check"));
    EXPECT_TRUE(c.contains("instance"));
    EXPECT_TRUE(c.contains("discrepancy"));
  }
}

TEST(Cli, IntertwineSuiteReportsFailure) {
  CliRun r = run({"check", "--suite", "intertwine"});
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"coeff", "--n", "1,x", "--q", "1/2"}).code, 2);
  EXPECT_EQ(run({"coeff", "--n", "1,1", "--q", "3/2"}).code, 2);
  EXPECT_EQ(run({"check", "--suite", "nope"}).code, 2);
  CliRun r = run({"coeff", "--n", "1,1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--q"), std::string::npos);
}

TEST(Cli, SimulateIsReproducible) {
  std::vector<std::string> args = {"simulate", "--n", "2,1", "--q", "1/2", "--seed", "9", "--replicas", "3"};
  CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(json::parse(line)["job"]["seed"], 9);
  int events = 0;
  while (std::getline(in, line))
    if (json::parse(line).contains("t")) ++events;
  EXPECT_GT(events, 0);
}

TEST(Cli, Audit) {
  CliRun r = run({"audit", "--n", "1,1", "--q", "1/2", "--replicas", "3000", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["theory"], "doob");
  EXPECT_LE(j["max_abs_z"].get<double>(), 4.0);
}

TEST(Cli, Limit) {
  CliRun r = run({"limit", "--kind", "coeff", "--n", "2,2", "--from", "4", "--to", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["points"].size(), 3u);
  EXPECT_DOUBLE_EQ(j["points"][0]["target"].get<double>(), 0.375);
}
