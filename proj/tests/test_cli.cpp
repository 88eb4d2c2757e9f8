// Copyright 2026 The casimir-sphere Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "casimir/cli.hpp"

using namespace casimir;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "casimir-sphere");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string without_timestamp(const std::string& s) {
  std::istringstream in(s);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("# timestamp:", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

std::vector<std::string> data_lines(const std::string& s) {
  std::istringstream in(s);
  std::string line;
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

const std::vector<std::string> kSmallGrid = {"--grid", "1/100:3/100:1/1000"};

}  // namespace

TEST(Cli, ValidationErrorsExitOne) {
  EXPECT_EQ(run({"extract-force", "--eps-in", "-2"}).code, kExitDomain);
  EXPECT_EQ(run({"extract-force", "--conductor", "--eps-in", "2"}).code, kExitDomain);
  EXPECT_EQ(run({"extract-force", "--eps-in", "abc"}).code, kExitDomain);
  EXPECT_EQ(run({"extract-force"}).code, kExitDomain);
  EXPECT_EQ(run({"sweep", "--case", "torus"}).code, kExitDomain);
  EXPECT_EQ(run({}).code, kExitDomain);
}

TEST(Cli, UnknownFlagPrintsUsage) {
  const CliRun r = run({"extract-force", "--bogus"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);
  EXPECT_NE(r.err.find("--eps-in"), std::string::npos);
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"--version"}).code, kExitOk);
}

TEST(Cli, IdenticalMediaGiveZero) {
  const CliRun r = run({"extract-force", "--eps-in", "1", "--eps-out", "1", "--output", "json-lines"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  const auto head = nlohmann::json::parse(line);
  EXPECT_EQ(head["type"], "provenance");
  EXPECT_EQ(head["units"].get<std::string>().find("hbar c / a^2") != std::string::npos, true);
  std::getline(in, line);
  const auto row = nlohmann::json::parse(line);
  EXPECT_EQ(row["f_m"].get<double>(), 0.0);
  EXPECT_GT(row["uncertainty"].get<double>(), 0.0);
}

TEST(Cli, BesselCheckColumnsAndDeterminism) {
  const std::vector<std::string> args = {"bessel-check", "--nu-min", "0.5", "--nu-max", "20.5",
                                         "--nu-step", "4", "--x-min", "0.1", "--points", "4"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(without_timestamp(a.out), without_timestamp(b.out));
  const auto lines = data_lines(a.out);
  ASSERT_EQ(lines.size(), 1u + 6 * 4);
  EXPECT_EQ(lines[0], "nu,x,path,value_I,value_K,wronskian_residual,rel_err_estimate");
  EXPECT_NE(a.out.find("# config_hash: "), std::string::npos);
  EXPECT_NE(a.out.find("# units: "), std::string::npos);
}

TEST(Cli, StressProfileRows) {
  const CliRun r = run({"stress-profile", "--eps-in", "2", "--delta", "0.2,0.3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "delta,side,s_rr,s_tt,err_estimate");
  EXPECT_NE(lines[1].find(",in,"), std::string::npos);
  EXPECT_NE(lines[2].find(",out,"), std::string::npos);
  EXPECT_EQ(run({"stress-profile", "--eps-in", "2", "--delta", "1.5"}).code, kExitDomain);
}

TEST(Cli, SurfaceTension) {
  const CliRun r = run({"surface-tension", "--radius-nm", "1", "--f-m", "0.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "radius_nm,f_m,gamma_si,gamma_dyn_cm");
  EXPECT_EQ(run({"surface-tension", "--radius-nm", "1"}).code, kExitDomain);
  EXPECT_EQ(run({"surface-tension", "--radius-nm", "-1", "--f-m", "0.01"}).code, kExitDomain);
}

TEST(Cli, ConfigFileAndOverrides) {
  const fs::path dir = fs::temp_directory_path() / "casimir-cli-config";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "conductor = true\n";
  // Media flags replace the file's media as a whole.
  CliRun r = run({"extract-force", "--config", cfg.string(), "--eps-in", "1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(run({"extract-force", "--config", (dir / "missing.cfg").string()}).code, kExitIo);
  std::ofstream(dir / "bad.cfg") << "colour = blue\n";
  r = run({"extract-force", "--config", (dir / "bad.cfg").string()});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, CacheDirectoryPrecedence) {
  const fs::path root = fs::temp_directory_path() / "casimir-cli-cache";
  fs::remove_all(root);
  const fs::path env_dir = root / "env", flag_dir = root / "flag";
  std::vector<std::string> args = {"extract-force", "--eps-in", "2", "--eps-out", "2",
                                   "--no-order-ladder", "--fit-order", "2"};
  args.insert(args.end(), kSmallGrid.begin(), kSmallGrid.end());
  ::setenv("CASIMIR_CACHE_DIR", env_dir.c_str(), 1);
  EXPECT_EQ(run(args).code, kExitOk);
  EXPECT_TRUE(fs::exists(env_dir));
  args.push_back("--cache-dir");
  args.push_back(flag_dir.string());
  EXPECT_EQ(run(args).code, kExitOk);
  EXPECT_TRUE(fs::exists(flag_dir));
  ::unsetenv("CASIMIR_CACHE_DIR");
  fs::remove_all(root);
}

TEST(Cli, OutputFileErrorsExitThree) {
  const CliRun r = run({"surface-tension", "--radius-nm", "1", "--f-m", "0.01", "--out",
                     "/nonexistent-dir/x/out.csv"});
  EXPECT_EQ(r.code, kExitIo);
  const fs::path p = fs::temp_directory_path() / "casimir-cli-out.csv";
  EXPECT_EQ(run({"surface-tension", "--radius-nm", "2", "--f-m", "0.01", "--out", p.string()}).code,
            kExitOk);
  EXPECT_TRUE(fs::exists(p));
  fs::remove(p);
}
