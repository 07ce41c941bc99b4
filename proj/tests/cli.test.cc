// Copyright 2026 The nullvalue Authors
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

#include "nvsim.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtest/gtest.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = nvsim::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nvsim_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Sets CI for the lifetime of the object.
class ScopedCi {
 public:
  ScopedCi() {
    const char* old = std::getenv("CI");
    if (old != nullptr) old_ = old;
    setenv("CI", "1", 1);
  }
  ~ScopedCi() {
    if (old_.empty()) {
      unsetenv("CI");
    } else {
      setenv("CI", old_.c_str(), 1);
    }
  }

 private:
  std::string old_;
};

}  // namespace

TEST(cli, help_and_version) {
  Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sweep-snr"), std::string::npos);
  EXPECT_NE(r.out.find("povm-check"), std::string::npos);
  r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, nvsim::version() + "\n");
  EXPECT_EQ(run({"optimize", "--help"}).code, 0);
}

TEST(cli, usage_errors_exit_2) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"sweep-snr", "--steps", "0"}).code, 2);
  EXPECT_EQ(run({"sweep-snr", "--scheme", "C"}).code, 2);
  EXPECT_EQ(run({"sweep-snr", "--p", "1.5"}).code, 2);
  EXPECT_EQ(run({"sweep-snr", "--steps", "x"}).code, 2);
  EXPECT_EQ(run({"optimize", "--cap-delta", "0.5", "--p", "0.5", "--grid", "31"}).code, 2);
  EXPECT_EQ(run({"optimize", "--cap-delta", "0", "--p", "0.5"}).code, 2);
  EXPECT_EQ(run({"povm-check", "--theta-m", "0.1", "--p", "2", "--theta-f", "0"}).code, 2);
  EXPECT_EQ(run({"povm-check", "--theta-m", "0.1"}).code, 2);
}

TEST(cli, sweep_csv_schema) {
  const Result r = run({"sweep-snr", "--steps", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6u);
  const std::vector<std::string> header = {
      "delta",       "snr_std",     "snr_nv_A",    "snr_nv_B",   "signal_nv_A",
      "noise_nv_A",  "signal_nv_B", "noise_nv_B",  "signal_std", "noise_std"};
  EXPECT_EQ(rows[0], header);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    ASSERT_EQ(rows[k].size(), header.size());
    for (const std::string& cell : rows[k]) {
      if (cell == "nan") continue;
      std::size_t used = 0;
      std::stod(cell, &used);
      EXPECT_EQ(used, cell.size()) << cell;
    }
  }
  EXPECT_EQ(rows[3][0], "0.1");
  EXPECT_EQ(rows[3][3], "nan");  // scheme B at delta = delta_M has no noise.
}

TEST(cli, sweep_scheme_selects_columns) {
  const Result r = run({"sweep-snr", "--steps", "3", "--scheme", "B"});
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"delta", "snr_nv_B", "signal_nv_B", "noise_nv_B"}));
}

TEST(cli, sweep_degrees) {
  const Result rad = run({"sweep-snr", "--steps", "3", "--delta-max", "0.2", "--delta-m", "0.1"});
  const Result deg = run({"sweep-snr", "--steps", "3", "--degrees", "--delta-max",
                          std::to_string(0.2 * 180 / 3.141592653589793238), "--delta-m",
                          std::to_string(0.1 * 180 / 3.141592653589793238)});
  ASSERT_EQ(deg.code, 0);
  const auto a = csv_rows(rad.out);
  const auto b = csv_rows(deg.out);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_NEAR(std::stod(a[2][1]), std::stod(b[2][1]), 1e-5);
}

TEST(cli, sweep_json) {
  const Result r = run({"sweep-snr", "--steps", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const Json doc = Json::parse(r.out);
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_TRUE(doc[1]["snr_nv_B"].is_null());
  EXPECT_TRUE(doc[1]["snr_nv_A"].is_number());
}

TEST(cli, mc_sweep_is_deterministic) {
  const std::vector<std::string> args = {"sweep-snr", "--mode", "mc", "--steps", "4",
                                         "--seed", "99"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> other = args;
  other.back() = "100";
  EXPECT_NE(run(other).out, a.out);
}

TEST(cli, ci_requires_seed) {
  ScopedCi ci;
  const fs::path dir = scratch("ci");
  EXPECT_EQ(run({"sweep-snr", "--mode", "mc", "--steps", "2"}).code, 2);
  EXPECT_EQ(run({"simulate-experiment", "--delta-list", "0.05", "--out-dir", dir.string()}).code,
            2);
  // Analytic sweeps draw no random numbers.
  EXPECT_EQ(run({"sweep-snr", "--steps", "2"}).code, 0);
}

TEST(cli, manifest_round_trip) {
  const fs::path dir = scratch("manifest");
  const fs::path out = dir / "sweep.csv";
  const Result r = run({"sweep-snr", "--mode", "mc", "--steps", "3", "--seed", "5", "--p", "0.2",
                        "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json m = Json::parse(slurp(out.string() + ".manifest.json"));
  EXPECT_EQ(m["command"], "sweep-snr");
  EXPECT_EQ(m["seed"], 5);
  EXPECT_EQ(m["version"], nvsim::version());
  EXPECT_EQ(m["outputs"][0], out.string());
  EXPECT_GE(m["wall_clock_seconds"].get<double>(), 0.0);

  // Re-running from the recorded parameters reproduces the output.
  const Json& p = m["parameters"];
  auto num = [](const Json& v) { return v.dump(); };
  const fs::path again = dir / "again.csv";
  const Result r2 = run({"sweep-snr", "--delta-min", num(p["delta_min"]), "--delta-max",
                         num(p["delta_max"]), "--steps", num(p["steps"]), "--delta-m",
                         num(p["delta_m"]), "--p", num(p["p"]), "--n", num(p["n"]), "--scheme",
                         p["scheme"], "--mode", p["mode"], "--noise", p["noise"], "--eta",
                         num(p["eta"]), "--format", p["format"], "--seed", num(m["seed"]),
                         "--out", again.string()});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(slurp(out), slurp(again));
}

TEST(cli, optimize_writes_contour) {
  const fs::path dir = scratch("optimize");
  const fs::path out = dir / "contour.csv";
  const Result r = run({"optimize", "--cap-delta", "0.5", "--p", "0.5", "--grid", "32", "--out",
                        out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("argmin theta_M="), std::string::npos);
  const auto rows = csv_rows(slurp(out));
  EXPECT_EQ(rows.size(), 1u + 32u * 32u);
  EXPECT_TRUE(fs::exists(out.string() + ".manifest.json"));
}

TEST(cli, povm_check_with_zero_collapse) {
  const Result r = run({"povm-check", "--theta-m", "0.3", "--p", "0", "--theta-f", "0.1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Pi_1 =\n  [ 0+0i, 0+0i ]\n  [ 0+0i, 0+0i ]\n"), std::string::npos);
  EXPECT_NE(r.out.find("completeness_defect 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("Pi_?     0    0   1"), std::string::npos);
}

TEST(cli, simulate_experiment_outputs) {
  const fs::path dir = scratch("experiment");
  const Result r = run({"simulate-experiment", "--delta-list", "0.02,0.05", "--seed", "3",
                        "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"counts_reference.csv", "counts_delta_000.csv",
                           "counts_delta_001.csv", "summary.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  const auto rows = csv_rows(slurp(dir / "counts_delta_001.csv"));
  ASSERT_FALSE(rows.empty());
  // Long format: one row per channel and bin.
  EXPECT_EQ(rows[0], (std::vector<std::string>{"delta", "channel", "bin", "count"}));
  EXPECT_EQ(rows.size(), 1u + 2u * 200u);
  const Json summary = Json::parse(slurp(dir / "summary.json"));
  ASSERT_EQ(summary["rows"].size(), 2u);
  EXPECT_TRUE(summary["rows"][1]["snr_theory"].is_number());
  EXPECT_TRUE(summary["rows"][1]["snr"].contains("poisson_fallback"));
  EXPECT_EQ(Json::parse(slurp(dir / "manifest.json"))["seed"], 3);

  // Same seed, byte-identical counts.
  const fs::path dir2 = scratch("experiment2");
  ASSERT_EQ(run({"simulate-experiment", "--delta-list", "0.02,0.05", "--seed", "3", "--out-dir",
                 dir2.string()})
                .code,
            0);
  EXPECT_EQ(slurp(dir / "counts_delta_001.csv"), slurp(dir2 / "counts_delta_001.csv"));
}

TEST(cli, simulate_experiment_rejects_bad_config) {
  const fs::path dir = scratch("badconfig");
  {
    std::ofstream f(dir / "bad.json");
    f << R"({"eta_w": 2, "bin_count": 0})";
  }
  const Result r = run({"simulate-experiment", "--config", (dir / "bad.json").string(),
                        "--delta-list", "0.05", "--seed", "1", "--out-dir", (dir / "o").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("eta_w"), std::string::npos);
  EXPECT_NE(r.err.find("bin_count"), std::string::npos);
  EXPECT_EQ(run({"simulate-experiment", "--delta-list", "0.05,abc", "--seed", "1", "--out-dir",
                 (dir / "o").string()})
                .code,
            2);
}

TEST(cli, standard_arrangement_experiment) {
  const fs::path dir = scratch("standard");
  const Result r = run({"simulate-experiment", "--scheme", "std", "--delta-list", "0.05",
                        "--seed", "8", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(slurp(dir / "counts_delta_000.csv"));
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows[1][1], "D_N");
}
