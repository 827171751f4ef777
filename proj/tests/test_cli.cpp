// Copyright 2026 The steercert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(STEERCERT_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parsed(const CliRun& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("steercert_cli_" + name);
}

}  // namespace

TEST(Cli, SelftestWitness) {
  const CliRun r = run("--seed 7 selftest --witness --eps 0.02");
  ASSERT_EQ(r.code, 0);
  const auto j = parsed(r);
  EXPECT_NEAR(j["report"]["saturation"].get<double>(), 1.98, 1e-9);
  EXPECT_TRUE(j["report"]["bound_holds"].get<bool>());
  EXPECT_EQ(j["manifest"]["command"], "selftest");
  EXPECT_EQ(j["manifest"]["seed"], 7);
}

TEST(Cli, SelftestHonest) {
  const CliRun r = run("selftest --honest");
  ASSERT_EQ(r.code, 0);
  EXPECT_LE(parsed(r)["report"]["extracted_distance"].get<double>(), 1e-10);
}

TEST(Cli, SelftestSweep) {
  const CliRun r = run("--workers 2 selftest --random-sweep 300 --min-saturation 1.9");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parsed(r)["sweep"]["violations"], 0);
}

TEST(Cli, QuotedCounts) {
  CliRun r = run("counts --c 12.3 --D 0.1 --setting iid");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(parsed(r)["count"]["count"].get<double>() / 2.2e9, 1.0, 0.05);
  r = run("counts --c 1.19 --D 0.1 --setting noniid");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(parsed(r)["count"]["count"].get<double>() / 2.2e14, 1.0, 0.05);
}

TEST(Cli, ComparisonCsvIsMonotone) {
  const CliRun r = run("--format csv counts --comparison --D-grid 0.05:0.5:0.01");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "D,iid_count,noniid_count");
  double prev_iid = INFINITY, prev_non = INFINITY;
  int rows = 0;
  while (std::getline(in, line)) {
    double d, a, b;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &d, &a, &b), 3) << line;
    EXPECT_LT(a, prev_iid);
    EXPECT_LT(b, prev_non);
    prev_iid = a;
    prev_non = b;
    ++rows;
  }
  EXPECT_EQ(rows, 46);
}

TEST(Cli, HonestGame) {
  const CliRun r = run("game --strategy honest --K 1000");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parsed(r)["correlation_value"].get<double>(), 1.0);
}

TEST(Cli, FamilySweep) {
  const CliRun r = run("steerable --family-sweep 200");
  ASSERT_EQ(r.code, 0);
  const auto j = parsed(r);
  EXPECT_TRUE(j["all_totally_steerable"].get<bool>());
  EXPECT_LE(j["max_purity_deviation"].get<double>(), 1e-10);
}

TEST(Cli, SteerableStates) {
  EXPECT_EQ(run("steerable --state bell").code, 0);
  const CliRun w = run("steerable --state werner:0.8");
  ASSERT_EQ(w.code, 0);
  EXPECT_FALSE(parsed(w)["verdict"]["totally_steerable"].get<bool>());
}

TEST(Cli, RigidityScenarios) {
  const std::string dir = STEERCERT_SCENARIO_DIR;
  const CliRun r = run("rigidity --scenario " + dir + "/bell_guess_n2_k4.json");
  ASSERT_EQ(r.code, 0);
  EXPECT_LE(parsed(r)["distance_to_guessing"].get<double>(), 1e-9);
  EXPECT_EQ(run("rigidity --scenario " + dir + "/does_not_exist.json").code, 2);
}

TEST(Cli, VdqcBitflipAborts) {
  const CliRun r = run("vdqc --M 4 --T 204 --server bitflip:0.1 --runs 5");
  ASSERT_EQ(r.code, 0);
  // 1 - 0.9^200 is 1 to nine digits.
  EXPECT_EQ(parsed(r)["abort_rate"].get<double>(), 1.0);
  EXPECT_EQ(run("vdqc --M 4 --T 204 --server bitflip:0.1 --expect-accept").code, 1);
  EXPECT_EQ(run("vdqc --M 4 --T 24 --runs 20 --expect-accept").code, 0);
}

TEST(Cli, VdqcAuditIsSeparate) {
  const auto audit = temp_path("audit.json");
  const CliRun r = run("vdqc --M 4 --T 24 --audit " + audit.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("flip"), std::string::npos);
  EXPECT_EQ(r.out.find("theta"), std::string::npos);
  const auto a = nlohmann::json::parse(slurp(audit));
  EXPECT_EQ(a["kept"].size(), 4u);
  EXPECT_TRUE(a["kept"][0].contains("flip"));
  std::filesystem::remove(audit);
}

TEST(Cli, ReportsAreByteIdentical) {
  for (const char* args : {"--seed 5 game --strategy iid_deviated:0.1 --K 200 --transcript",
                           "--seed 5 vdqc --server witness:0.02 --runs 3",
                           "--seed 5 steerable --random 20"}) {
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = temp_path("out.json");
  const CliRun a = run("--seed 3 game --strategy noisy:0.2 --K 100");
  const CliRun b = run("--seed 3 --out " + path.string() + " game --strategy noisy:0.2 --K 100");
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.out.empty());
  auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(jb["manifest"]["outputs"][0], path.string());
  ja.erase("manifest");
  jb.erase("manifest");
  EXPECT_EQ(ja, jb);
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("selftest").code, 2);
  EXPECT_EQ(run("selftest --bogus").code, 2);
  EXPECT_EQ(run("--format csv selftest --honest").code, 2);
  EXPECT_EQ(run("game --K 3").code, 2);
  EXPECT_EQ(run("game --strategy psychic").code, 2);
  EXPECT_EQ(run("counts --c -1 --D 0.1").code, 2);
  EXPECT_EQ(run("vdqc --M 4 --T 4").code, 2);
  EXPECT_EQ(run("steerable --state werner:7").code, 2);
  EXPECT_EQ(run("--format xml counts").code, 2);
}
