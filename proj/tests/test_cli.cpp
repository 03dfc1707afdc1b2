// Copyright 2026 The splitmesh Authors
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

// End-to-end checks against the built binary. The test runner exports
// SPLITMESH_BIN with its path.

#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string binary_path() {
  const char* env = std::getenv("SPLITMESH_BIN");
  REQUIRE(env != nullptr);
  return env;
}

fs::path scratch_dir() {
  const fs::path dir =
      fs::temp_directory_path() / ("splitmesh_cli_" + std::to_string(getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const fs::path dir = scratch_dir();
  const fs::path out_path = dir / "stdout.txt";
  const fs::path err_path = dir / "stderr.txt";
  const std::string cmd = env_prefix + "'" + binary_path() + "' " + args +
                          " > '" + out_path.string() + "' 2> '" +
                          err_path.string() + "'";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

// probability column of the row for `channel` in a run readout
double readout_probability(const std::string& out, int channel) {
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    int ch = 0;
    std::string side, label;
    double prob = -1.0;
    if (fields >> ch >> side >> label >> prob && ch == channel) return prob;
  }
  FAIL("no readout row for channel " + std::to_string(channel));
  return -1.0;
}

}  // namespace

TEST_CASE("run: Mach-Zehnder preset sends everything to channel 3", "[cli]") {
  const CliResult r = run_cli("run --preset mz --input 1");
  REQUIRE(r.exit_code == 0);
  REQUIRE(readout_probability(r.out, 3) == 1.0);
  REQUIRE(readout_probability(r.out, 4) <= 1e-12);
  REQUIRE(r.out.find("D1") != std::string::npos);
}

TEST_CASE("run: balanced 2x2 readout", "[cli]") {
  const CliResult r = run_cli("run --p 2 --theta pi/4 --input 1");
  REQUIRE(r.exit_code == 0);
  REQUIRE(std::abs(readout_probability(r.out, 1) - 0.25) <= 1e-12);
  REQUIRE(std::abs(readout_probability(r.out, 2) - 0.25) <= 1e-12);
  REQUIRE(std::abs(readout_probability(r.out, 3) - 0.5) <= 1e-12);
  REQUIRE(readout_probability(r.out, 4) <= 1e-12);
}

TEST_CASE("run: writes trace, heatmap and manifest", "[cli]") {
  const fs::path dir = scratch_dir();
  const fs::path trace = dir / "trace.csv";
  const fs::path heatmap = dir / "trace.pgm";
  const fs::path manifest = dir / "manifest.json";
  const CliResult r = run_cli("run --p 2 --theta T:50 --input 1 --trace '" +
                              trace.string() + "' --heatmap '" +
                              heatmap.string() + "' --manifest '" +
                              manifest.string() + "'");
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(trace);
  REQUIRE(csv.rfind("stage,ch1,ch2,ch3,ch4\n", 0) == 0);
  REQUIRE(slurp(heatmap).rfind("P2\n", 0) == 0);
  REQUIRE(slurp(manifest).find("\"kind\": \"uniform\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  REQUIRE(run_cli("").exit_code == 2);                       // no subcommand
  REQUIRE(run_cli("frobnicate").exit_code == 2);             // unknown one
  REQUIRE(run_cli("run --p 2 --input 1").exit_code == 2);    // no policy
  REQUIRE(run_cli("run --p 2 --bogus 1").exit_code == 2);    // unknown flag
  REQUIRE(run_cli("run --preset mz --theta pi/4").exit_code == 2);
  REQUIRE(run_cli("run --preset nope").exit_code == 2);
  REQUIRE(run_cli("run --p 2 --theta pi/4 --seed 3").exit_code == 2);
  REQUIRE(run_cli("run --p 2 --random-T 50").exit_code == 2);
  REQUIRE(run_cli("run --p 2 --theta wat").exit_code == 2);
  REQUIRE(run_cli("run --preset mz --p 3").exit_code == 2);
  REQUIRE(run_cli("sweep --p 2").exit_code == 2);            // --grid required
  REQUIRE(run_cli("sweep --p 2 --grid 0:pi:0").exit_code == 2);
  REQUIRE(run_cli("run --p 2 --theta pi/4 --input '1:zz'").exit_code == 2);
}

TEST_CASE("runtime failures exit with 1", "[cli]") {
  // channel out of range for the array
  const CliResult bounds = run_cli("run --p 2 --theta pi/4 --input 99");
  REQUIRE(bounds.exit_code == 1);
  REQUIRE(bounds.err.find("out of range") != std::string::npos);

  const CliResult missing = run_cli("run --p 2 --theta-file /does/not/exist");
  REQUIRE(missing.exit_code == 1);

  // a NaN mixing angle must be caught, not propagated
  const fs::path bad = scratch_dir() / "bad_theta.map";
  std::ofstream(bad) << "1 1 nan\n";
  const CliResult nan_theta =
      run_cli("run --p 1 --theta-file '" + bad.string() + "'");
  REQUIRE(nan_theta.exit_code == 1);
  REQUIRE(nan_theta.err.find("finite") != std::string::npos);
}

TEST_CASE("theta file with fallback fills the grid", "[cli]") {
  const fs::path map = scratch_dir() / "partial.map";
  std::ofstream(map) << "# corner devices only\n1 1 T:50\n2 2 T:50\n";
  const CliResult r = run_cli("run --p 2 --theta-file '" + map.string() +
                              "' --theta pi/2 --input 1");
  REQUIRE(r.exit_code == 0);
  // this assignment is exactly the Mach-Zehnder embedding
  REQUIRE(std::abs(readout_probability(r.out, 3) - 1.0) <= 1e-12);

  const CliResult incomplete =
      run_cli("run --p 2 --theta-file '" + map.string() + "' --input 1");
  REQUIRE(incomplete.exit_code == 1);
}

TEST_CASE("sweep writes one row per grid point", "[cli]") {
  const CliResult r = run_cli("sweep --p 2 --grid 0:pi/2:5 --input 1");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  REQUIRE(rows == 6);  // header + 5
  REQUIRE(r.out.rfind("theta,ch1,ch2,ch3,ch4\n", 0) == 0);

  const CliResult again = run_cli("sweep --p 2 --grid 0:pi/2:5 --input 1");
  REQUIRE(again.out == r.out);
}

TEST_CASE("thread cap changes nothing but the schedule", "[cli]") {
  const std::string args = "sweep --p 3 --grid 0:pi/2:17 --input 2";
  const CliResult capped = run_cli(args, "SPLITMESH_THREADS=2 ");
  REQUIRE(capped.exit_code == 0);
  const CliResult serial = run_cli(args, "SPLITMESH_THREADS=1 ");
  REQUIRE(serial.out == capped.out);
  REQUIRE(run_cli(args, "SPLITMESH_THREADS=zero ").exit_code == 2);
  REQUIRE(run_cli(args, "SPLITMESH_THREADS=0 ").exit_code == 2);
}

TEST_CASE("bench completes on tiny arrays", "[cli]") {
  const CliResult r = run_cli("bench --ladder 1,2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("ns/device") != std::string::npos);
  REQUIRE(run_cli("bench --ladder 0").exit_code == 2);
  REQUIRE(run_cli("bench --ladder 5,x").exit_code == 2);
}

TEST_CASE("verify passes on the default suites", "[cli]") {
  const CliResult r = run_cli("verify --cases 20 --p-max 5");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("[PASS] device-unitarity") != std::string::npos);
  REQUIRE(r.out.find("[PASS] array-unitarity") != std::string::npos);
  REQUIRE(r.out.find("[PASS] commutation") != std::string::npos);
  REQUIRE(r.out.find("[PASS] oracle-equivalence") != std::string::npos);
  REQUIRE(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify covers a user-specified array", "[cli]") {
  const CliResult r = run_cli("verify --cases 5 --p-max 3 --p 4 --theta pi/3");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("[PASS] user-spec") != std::string::npos);
}

TEST_CASE("version flag", "[cli]") {
  const CliResult r = run_cli("--version");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("splitmesh 0.1.0") != std::string::npos);
}
