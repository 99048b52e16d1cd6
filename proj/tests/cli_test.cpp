// Copyright 2026 The qbrittle Authors
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

// Drives the qbrittle executable end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "qbrittle/qbrittle.hpp"

namespace qbrittle {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qbrittle_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = env + " " + QBRITTLE_CLI_PATH + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

std::string last_line(const std::string& text) {
  std::string t = text;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') == std::string::npos ? 0 : t.rfind('\n') + 1);
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST_F(CliTest, GenerateTwelveQubitPreset) {
  const Result r = run("generate --n 12 --alpha 2.5 --rho 0.25 --seed 7 --out " + path("c.json").string() +
                       " --qasm " + path("c.qasm").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const Circuit c = circuit_from_json(slurp(path("c.json")));
  EXPECT_EQ(c.size(), 537u);
  EXPECT_EQ(c.params()->seed, 7u);
  EXPECT_EQ(slurp(path("c.qasm")), export_qasm(c));
  EXPECT_TRUE(fs::exists(path("c.json.manifest.json")));
}

TEST_F(CliTest, GenerateIsByteIdentical) {
  ASSERT_EQ(run("generate --n 12 --alpha 2.5 --rho 0.25 --seed 7 --out " + path("a.json").string()).code, 0);
  ASSERT_EQ(run("generate --n 12 --alpha 2.5 --rho 0.25 --seed 7 --out " + path("b.json").string()).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, GenerateOddQubitsExitsTwo) {
  const Result r = run("generate --n 11 --alpha 2.3 --rho 0.28");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("odd"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownFlagExitsTwo) { EXPECT_EQ(run("generate --bogus").code, 2); }

TEST_F(CliTest, PruneReportsRemovalCount) {
  ASSERT_EQ(run("generate --n 10 --seed 1 --out " + path("c.json").string()).code, 0);
  const Result r = run("prune --in " + path("c.json").string() + " --kappa 0.11 --out " + path("p.json").string() +
                       " --importance-csv " + path("imp.csv").string() + " --state-csv " + path("s.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("removed 37"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("label="), std::string::npos);
  EXPECT_EQ(circuit_from_json(slurp(path("p.json"))).size(), 305u);
  EXPECT_EQ(line_count(slurp(path("imp.csv"))), 343u);
  EXPECT_EQ(line_count(slurp(path("s.csv"))), 1025u);
}

TEST_F(CliTest, PruneZeroQuotaExitsTwo) {
  ASSERT_EQ(run("generate --n 10 --seed 1 --out " + path("c.json").string()).code, 0);
  EXPECT_EQ(run("prune --in " + path("c.json").string() + " --kappa 0.001").code, 2);
}

TEST_F(CliTest, AwareOnNonBrittleMatchesCausal) {
  ASSERT_EQ(run("generate --n 10 --seed 4 --out " + path("c.json").string()).code, 0);
  const std::string in = " --in " + path("c.json").string() + " --kappa 0.11 --std-threshold 0 --ratio-threshold 0";
  const Result causal = run("prune" + in + " --mode causal --out " + path("causal.json").string());
  const Result aware = run("prune" + in + " --mode aware --out " + path("aware.json").string());
  ASSERT_EQ(causal.code, 0);
  ASSERT_EQ(aware.code, 0);
  EXPECT_NE(aware.out.find("brittle=false"), std::string::npos) << aware.out;
  EXPECT_EQ(slurp(path("causal.json")), slurp(path("aware.json")));
  const auto summary = [](const std::string& s) { return s.substr(0, s.find(", mode=")); };
  EXPECT_EQ(summary(causal.out), summary(aware.out));
}

TEST_F(CliTest, PruneMissingAndMalformedInputs) {
  EXPECT_EQ(run("prune --in " + path("missing.json").string()).code, 2);
  std::ofstream(path("bad.json")) << R"({"params": null, "gates": []})";
  const Result r = run("prune --in " + path("bad.json").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("n_qubits"), std::string::npos);
}

TEST_F(CliTest, QubitCapExitsFour) {
  ASSERT_EQ(run("generate --n 10 --seed 1 --out " + path("c.json").string()).code, 0);
  EXPECT_EQ(run("prune --in " + path("c.json").string(), "QBRITTLE_MAX_QUBITS=8").code, 4);
}

TEST_F(CliTest, EnsembleWritesArtifacts) {
  const fs::path out = path("ens");
  const Result r = run("ensemble --n 10 --kappa 0.2 --threads 2 --svg --out-dir " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(slurp(out / "records.csv")), 101u);  // header + 100 rows
  EXPECT_EQ(line_count(slurp(out / "hist_fidelity.csv")), 21u);
  EXPECT_EQ(line_count(slurp(out / "hist_r.csv")), 21u);
  EXPECT_NE(slurp(out / "hist_fidelity.svg").find("<svg"), std::string::npos);
  const auto manifest = ordered_json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["config"]["kappa"], 0.2);
  const EnsembleReport rep = report_from_json(ordered_json::parse(slurp(out / "report.json")));
  EXPECT_EQ(rep.records.size(), 100u);

  const Result again = run("report --in " + (out / "report.json").string());
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(again.out, r.out);
}

TEST_F(CliTest, EnsembleRerunIsByteIdentical) {
  ASSERT_EQ(run("ensemble --n 10 --kappa 0.2 --count 10 --threads 1 --out-dir " + path("a").string()).code, 0);
  ASSERT_EQ(run("ensemble --n 10 --kappa 0.2 --count 10 --threads 3 --out-dir " + path("b").string()).code, 0);
  for (const char* f : {"report.json", "records.csv", "hist_fidelity.csv", "hist_r.csv"}) {
    EXPECT_EQ(slurp(path("a") / f), slurp(path("b") / f)) << f;
  }
}

TEST_F(CliTest, EnsembleSingleClassHasNullGap) {
  const fs::path out = path("ens");
  const Result r = run("ensemble --n 10 --count 6 --threshold 0 --out-dir " + out.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  const auto j = ordered_json::parse(slurp(out / "report.json"));
  EXPECT_TRUE(j["fidelity_gap"].is_null());
  EXPECT_TRUE(j["cohens_d_fidelity"].is_null());
}

TEST_F(CliTest, SweepDefaultGrid) {
  const Result r = run("sweep --n 10 --out " + path("sweep.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(slurp(path("sweep.csv"))), 13u);  // header + 12 grid points
  const std::string last = last_line(r.out);
  ASSERT_EQ(last.rfind("selected_kappa=", 0), 0u) << last;
  const double kappa = std::stod(last.substr(15));
  EXPECT_GT(kappa, 0.04);
  EXPECT_LT(kappa, 0.39);
}

TEST_F(CliTest, SweepWithoutTransitionExitsThree) {
  const Result r = run("sweep --n 10 --threshold 0 --grid 0.05,0.08 --probes 4");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out.find("selected_kappa="), std::string::npos);
}

TEST_F(CliTest, ReportRejectsGarbage) {
  std::ofstream(path("r.json")) << "{";
  EXPECT_EQ(run("report --in " + path("r.json").string()).code, 2);
}

}  // namespace
}  // namespace qbrittle
