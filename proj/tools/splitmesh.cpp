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

// Command line front end: run | sweep | verify | bench.
// Exit codes: 0 success, 1 runtime or verification failure, 2 usage.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "splitmesh/io.hpp"
#include "splitmesh/oracle.hpp"
#include "splitmesh/version.hpp"

namespace {

using namespace splitmesh;

// Raised for bad flag values/combinations; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PolicyFlags {
  int grid_side = 0;
  std::string theta_literal;
  std::string theta_file;
  std::string random_t;
  std::uint64_t seed = 0;
  std::string preset;
};

struct ResolvedArray {
  ArraySpec spec;
  RunManifest manifest;
  DetectorLabels labels;
};

std::pair<double, double> parse_mean_sigma(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw UsageError("--random-T expects mean,sigma, got '" + text + "'");
  }
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string mean_s = text.substr(0, comma);
    const std::string sigma_s = text.substr(comma + 1);
    const double mean = std::stod(mean_s, &p1);
    const double sigma = std::stod(sigma_s, &p2);
    if (p1 != mean_s.size() || p2 != sigma_s.size()) {
      throw std::invalid_argument(text);
    }
    return {mean, sigma};
  } catch (const std::exception&) {
    throw UsageError("--random-T expects mean,sigma, got '" + text + "'");
  }
}

ResolvedArray resolve_array(const PolicyFlags& flags) {
  const bool has_theta = !flags.theta_literal.empty();
  const bool has_file = !flags.theta_file.empty();
  const bool has_random = !flags.random_t.empty();
  const bool has_preset = !flags.preset.empty();

  if (has_preset) {
    if (flags.preset != "mz") {
      throw UsageError("unknown preset '" + flags.preset + "'");
    }
    if (flags.grid_side != 0 && flags.grid_side != 2) {
      throw UsageError("preset mz is a p=2 array; drop --p or pass --p 2");
    }
    RunManifest manifest;
    manifest.grid_side = 2;
    manifest.policy_kind = "preset";
    manifest.preset = flags.preset;
    return {ArraySpec::mach_zehnder(), std::move(manifest),
            mach_zehnder_detector_labels()};
  }

  if (flags.grid_side < 1) {
    throw UsageError("--p is required and must be >= 1");
  }
  RunManifest manifest;
  manifest.grid_side = flags.grid_side;

  if (has_random) {
    const auto [mean, sigma] = parse_mean_sigma(flags.random_t);
    RandomThetaPolicy policy{mean, sigma, flags.seed};
    SampledArray sampled = sample_random_array(flags.grid_side, policy);
    manifest.policy_kind = "random";
    manifest.mean_transmission = mean;
    manifest.sigma_transmission = sigma;
    manifest.seed = flags.seed;
    manifest.sampled_transmissions = std::move(sampled.transmissions);
    return {std::move(sampled.spec), std::move(manifest), {}};
  }

  std::optional<MixingAngle> theta;
  if (has_theta) {
    try {
      theta = parse_angle_literal(flags.theta_literal);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  if (has_file) {
    const auto entries = parse_theta_map_file(flags.theta_file);
    manifest.policy_kind = "file";
    manifest.theta_file = flags.theta_file;
    if (theta.has_value()) {
      manifest.has_fallback_theta = true;
      manifest.fallback_theta_radians = theta->radians();
    }
    return {array_from_entries(flags.grid_side, entries, theta),
            std::move(manifest),
            {}};
  }

  if (!theta.has_value()) {
    throw UsageError(
        "pick a theta policy: --theta, --theta-file, --random-T or --preset");
  }
  manifest.policy_kind = "uniform";
  manifest.uniform_theta_radians = theta->radians();
  manifest.theta_literal = flags.theta_literal;
  return {ArraySpec::uniform(flags.grid_side, *theta), std::move(manifest), {}};
}

PureState parse_input_or_usage(const std::string& literal, int grid_side) {
  try {
    return parse_state_literal(literal, grid_side);
  } catch (const std::out_of_range&) {
    throw;  // channel bounds: runtime failure, exit 1
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad --input literal: " + std::string(e.what()));
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int sweep_thread_budget() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  int budget = static_cast<int>(hw);
  if (const char* env = std::getenv("SPLITMESH_THREADS")) {
    int cap = 0;
    try {
      std::size_t pos = 0;
      cap = std::stoi(env, &pos);
      if (pos != std::string(env).size() || cap < 1) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError("SPLITMESH_THREADS must be a positive integer");
    }
    budget = std::min(budget, cap);
  }
  return budget;
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
  PolicyFlags policy;
  std::string input = "1";
  std::string trace_path;
  std::string heatmap_path;
  std::string manifest_path;
};

int cmd_run(const RunOptions& opt) {
  ResolvedArray resolved = resolve_array(opt.policy);
  resolved.manifest.input_literal = opt.input;
  const PureState input =
      parse_input_or_usage(opt.input, resolved.spec.grid_side());

  const EvolveResult result = evolve(resolved.spec, input);
  const DetectorReadout readout =
      resolved.labels.empty()
          ? detector_readout(result.final_state)
          : detector_readout(result.final_state, resolved.labels);

  std::printf("p = %d, channels = %d, devices = %d\n",
              resolved.spec.grid_side(), 2 * resolved.spec.grid_side(),
              resolved.spec.device_count());
  std::printf("%7s  %-6s  %-8s  %s\n", "channel", "side", "label",
              "probability");
  for (const DetectorEntry& entry : readout.entries) {
    std::printf("%7d  %-6s  %-8s  %.17g\n", entry.channel,
                std::string(to_string(entry.side)).c_str(),
                entry.label.c_str(), entry.probability);
  }
  std::printf("odd/right mass   = %.17g\n", readout.right_mass);
  std::printf("even/bottom mass = %.17g\n", readout.bottom_mass);

  if (!opt.trace_path.empty()) write_file(opt.trace_path, trace_csv(result.trace));
  if (!opt.heatmap_path.empty()) write_file(opt.heatmap_path, trace_pgm(result.trace));
  if (!opt.manifest_path.empty()) {
    write_file(opt.manifest_path, manifest_json(resolved.manifest));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  int grid_side = 0;
  std::string grid;
  std::string input = "1";
  std::string out_path;
};

int cmd_sweep(const SweepOptions& opt) {
  if (opt.grid_side < 1) throw UsageError("--p is required and must be >= 1");
  std::vector<MixingAngle> grid;
  try {
    grid = parse_theta_grid(opt.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const PureState input = parse_input_or_usage(opt.input, opt.grid_side);
  const DetectorCurves curves =
      detector_curves(opt.grid_side, grid, input, sweep_thread_budget());
  const std::string csv = curves_csv(curves, opt.grid_side);
  if (opt.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file(opt.out_path, csv);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  int cases = 100;
  int p_max = 8;
  std::uint64_t seed = 1;
  PolicyFlags policy;  // optional user spec to verify on top of the suites
  bool has_policy = false;
};

PureState random_state(int grid_side, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(2 * grid_side);
  for (Complex& a : amps) a = Complex(gauss(rng), gauss(rng));
  const double n = vector_norm(amps);
  for (Complex& a : amps) a /= n;
  return PureState(grid_side, std::move(amps));
}

ArraySpec random_array(int grid_side, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  std::vector<MixingAngle> thetas;
  thetas.reserve(grid_side * grid_side);
  for (int i = 0; i < grid_side * grid_side; ++i) {
    thetas.emplace_back(angle(rng));
  }
  return ArraySpec(grid_side, std::move(thetas));
}

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

int cmd_verify(const VerifyOptions& opt) {
  if (opt.cases < 1 || opt.p_max < 1) {
    throw UsageError("--cases and --p-max must be >= 1");
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> side_dist(1, opt.p_max);
  std::vector<SuiteResult> results;

  {  // single-device unitarity
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int p = side_dist(rng);
      std::uniform_int_distribution<int> pos(1, p);
      std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                   std::numbers::pi);
      const BeamSplitterSpec spec{pos(rng), pos(rng), MixingAngle(angle(rng))};
      worst = std::max(worst, unitarity_defect(beam_splitter_matrix(spec, p)));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "1000 cases, max defect %.3g", worst);
    results.push_back({"device-unitarity", worst <= 1e-15, buf});
  }

  {  // composed-array unitarity
    double worst = 0.0;
    for (int i = 0; i < opt.cases; ++i) {
      const int p = side_dist(rng);
      worst = std::max(worst, unitarity_defect(compose_total(random_array(p, rng))));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d cases, max defect %.3g", opt.cases, worst);
    results.push_back({"array-unitarity", worst <= 1e-12, buf});
  }

  {  // same-diagonal commutation + order invariance
    double worst_comm = 0.0;
    double worst_perm = 0.0;
    for (int p = 1; p <= 6; ++p) {
      const ArraySpec spec = random_array(p, rng);
      const DiagonalSchedule schedule = diagonal_schedule(p);
      for (const auto& diag : schedule.diagonals) {
        for (std::size_t i = 0; i < diag.size(); ++i) {
          for (std::size_t j = i + 1; j < diag.size(); ++j) {
            worst_comm = std::max(
                worst_comm,
                commutator_defect(spec.device(diag[i].row, diag[i].col),
                                  spec.device(diag[j].row, diag[j].col), p));
          }
        }
      }
      const DenseOperator canonical = compose_total(spec);
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<GridCoord> order;
        for (auto diag : schedule.diagonals) {
          std::shuffle(diag.begin(), diag.end(), rng);
          order.insert(order.end(), diag.begin(), diag.end());
        }
        const DenseOperator permuted = compose_ordered(spec, order);
        worst_perm = std::max(
            worst_perm, (permuted - canonical).cwiseAbs().maxCoeff());
      }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "p<=6 pairs, max commutator %.3g, max order drift %.3g",
                  worst_comm, worst_perm);
    results.push_back(
        {"commutation", worst_comm <= 1e-15 && worst_perm <= 1e-13, buf});
  }

  {  // fast path vs dense oracle
    double worst = 0.0;
    for (int i = 0; i < opt.cases; ++i) {
      const int p = side_dist(rng);
      const ArraySpec spec = random_array(p, rng);
      const PureState input = random_state(p, rng);
      const PureState fast = evolve(spec, input).final_state;
      const PureState slow = dense_evolve(spec, input);
      for (int k = 1; k <= 2 * p; ++k) {
        worst = std::max(worst, std::abs(fast.amplitude(k) - slow.amplitude(k)));
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d cases, max deviation %.3g", opt.cases,
                  worst);
    results.push_back({"oracle-equivalence", worst <= 1e-12, buf});
  }

  if (opt.has_policy) {  // the user-supplied configuration
    const ResolvedArray resolved = resolve_array(opt.policy);
    const double unitary =
        unitarity_defect(compose_total(resolved.spec));
    const PureState input = PureState::basis(1, resolved.spec.grid_side());
    const PureState fast = evolve(resolved.spec, input).final_state;
    const PureState slow = dense_evolve(resolved.spec, input);
    double dev = 0.0;
    for (int k = 1; k <= resolved.spec.grid_side() * 2; ++k) {
      dev = std::max(dev, std::abs(fast.amplitude(k) - slow.amplitude(k)));
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "unitarity defect %.3g, oracle deviation %.3g", unitary, dev);
    results.push_back({"user-spec", unitary <= 1e-10 && dev <= 1e-12, buf});
  }

  bool all_pass = true;
  for (const SuiteResult& r : results) {
    std::printf("[%s] %-18s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string ladder = "50,100,200,400";
};

std::vector<int> parse_ladder(const std::string& text) {
  std::vector<int> ladder;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t pos = 0;
      const int p = std::stoi(token, &pos);
      if (pos != token.size() || p < 1) throw std::invalid_argument(token);
      ladder.push_back(p);
    } catch (const std::exception&) {
      throw UsageError("--ladder expects comma-separated sides >= 1, got '" +
                       text + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (ladder.empty()) throw UsageError("--ladder must not be empty");
  return ladder;
}

// Seconds per evolution, calibrated so each sample batch runs >= 10 ms.
// Times evolve_into with reused buffers so the allocator stays out of the
// measurement.
double time_evolve(int grid_side) {
  using clock = std::chrono::steady_clock;
  const ArraySpec spec =
      ArraySpec::uniform(grid_side, MixingAngle(std::numbers::pi / 4));
  const PureState input = PureState::basis(1, grid_side);
  EvolveResult scratch = evolve(spec, input);  // warmup + buffer setup

  auto batch_seconds = [&](long reps) {
    const auto begin = clock::now();
    for (long i = 0; i < reps; ++i) {
      evolve_into(spec, input, scratch);
      if (scratch.trace.stages.empty()) std::abort();  // keep the call observable
    }
    return std::chrono::duration<double>(clock::now() - begin).count();
  };

  long reps = 1;
  double elapsed = batch_seconds(reps);
  while (elapsed < 0.01 && reps < (1L << 22)) {
    reps *= 2;
    elapsed = batch_seconds(reps);
  }
  double best = elapsed / static_cast<double>(reps);
  for (int i = 0; i < 2; ++i) {
    best = std::min(best, batch_seconds(reps) / static_cast<double>(reps));
  }
  return best;
}

int cmd_bench(const BenchOptions& opt) {
  const std::vector<int> ladder = parse_ladder(opt.ladder);
  std::vector<double> totals;
  std::printf("%6s  %9s  %12s  %12s\n", "p", "devices", "evolve [ms]",
              "ns/device");
  for (int p : ladder) {
    const double seconds = time_evolve(p);
    totals.push_back(seconds);
    std::printf("%6d  %9d  %12.4f  %12.1f\n", p, p * p, seconds * 1e3,
                seconds * 1e9 / (static_cast<double>(p) * p));
  }
  bool pass = true;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (totals[i] < totals[i - 1]) {
      std::printf("non-monotone: p=%d ran faster than p=%d\n", ladder[i],
                  ladder[i - 1]);
      pass = false;
    }
    if (ladder[i] == 2 * ladder[i - 1]) {
      const double ratio = totals[i] / totals[i - 1];
      std::printf("doubling %d -> %d: time ratio %.2f (budget 5.0)\n",
                  ladder[i - 1], ladder[i], ratio);
      if (!(ratio <= 5.0)) pass = false;
    }
  }
  std::printf("%s\n", pass ? "[PASS] scaling consistent with O(p^2)"
                           : "[FAIL] scaling check");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam splitter array simulator"};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + std::string(kToolVersion));
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Evolve one input state");
  run->add_option("--p", run_opt.policy.grid_side, "Array side length");
  auto* run_theta = run->add_option(
      "--theta", run_opt.policy.theta_literal,
      "Uniform angle (pi/4, 0.785, T:50); with --theta-file, the default "
      "for unlisted devices");
  auto* run_file = run->add_option("--theta-file", run_opt.policy.theta_file,
                                   "Per-device theta map file");
  auto* run_random = run->add_option("--random-T", run_opt.policy.random_t,
                                     "Sample transmissions from normal(mean,sigma)");
  auto* run_seed =
      run->add_option("--seed", run_opt.policy.seed, "Sampler seed");
  auto* run_preset =
      run->add_option("--preset", run_opt.policy.preset, "Named array: mz");
  run->add_option("--input", run_opt.input,
                  "Input channel k or superposition literal k:re[+im i],...");
  run->add_option("--trace", run_opt.trace_path, "Write the stage trace CSV");
  run->add_option("--heatmap", run_opt.heatmap_path,
                  "Write the stage trace as an ASCII PGM");
  run->add_option("--manifest", run_opt.manifest_path,
                  "Write the reproducibility manifest JSON");
  run_preset->excludes(run_theta, run_file, run_random, run_seed);
  run_random->excludes(run_theta, run_file);
  run_seed->needs(run_random);

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "Uniform-theta angle sweep");
  sweep->add_option("--p", sweep_opt.grid_side, "Array side length")
      ->required();
  sweep->add_option("--grid", sweep_opt.grid, "Angle grid start:stop:count")
      ->required();
  sweep->add_option("--input", sweep_opt.input, "Input state literal");
  sweep->add_option("--trace", sweep_opt.out_path,
                    "Write the curves CSV here instead of stdout");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "Self-check suites");
  verify->add_option("--cases", verify_opt.cases, "Random cases per suite");
  verify->add_option("--p-max", verify_opt.p_max, "Largest random array side");
  verify->add_option("--seed", verify_opt.seed, "Suite RNG seed");
  auto* verify_p =
      verify->add_option("--p", verify_opt.policy.grid_side,
                         "Also verify this user-specified array: side length");
  auto* verify_theta = verify->add_option("--theta", verify_opt.policy.theta_literal,
                                          "User array: uniform angle");
  auto* verify_file = verify->add_option(
      "--theta-file", verify_opt.policy.theta_file, "User array: theta map");
  verify_theta->needs(verify_p);
  verify_file->needs(verify_p);

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "Evolution timing ladder");
  bench->add_option("--ladder", bench_opt.ladder,
                    "Comma-separated array sides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt);
    if (verify->parsed()) {
      verify_opt.has_policy = verify_p->count() > 0;
      return cmd_verify(verify_opt);
    }
    if (bench->parsed()) return cmd_bench(bench_opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
