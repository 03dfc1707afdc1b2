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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "splitmesh/simulator.hpp"

namespace splitmesh {

// Serialization is byte-deterministic: identical inputs always render
// identical text. Probabilities are written with 17 significant digits so a
// text round trip recovers the exact double.

// CSV with header "stage,ch1..ch{2p}", one row per trace stage.
std::string trace_csv(const EvolutionTrace& trace);

// CSV with header "theta,ch1..ch{2p}", one row per grid angle.
std::string curves_csv(const DetectorCurves& curves, int grid_side);

// ASCII portable graymap (P2), maxval 65535. Rows are trace stages, columns
// channels; pixel = round(probability * maxval).
std::string trace_pgm(const EvolutionTrace& trace);

// Angle flag literal: "pi", "pi/4", "3pi/2", "-0.5pi", plain radians
// ("0.785"), or a transmission percentage ("T:50"). Parsing never defaults:
// anything else raises std::invalid_argument.
MixingAngle parse_angle_literal(std::string_view text);

// Sweep grid literal "start:stop:count". Bounds take the angle literal forms
// above except "T:"; count >= 1 points, endpoints inclusive.
std::vector<MixingAngle> parse_theta_grid(std::string_view text);

// Everything needed to reproduce a run bit-for-bit with the same build.
struct RunManifest {
  int grid_side = 0;
  std::string input_literal;

  // Exactly one policy kind: "uniform", "file", "random" or "preset".
  std::string policy_kind;
  double uniform_theta_radians = 0.0;   // uniform
  std::string theta_literal;            // uniform: the flag text as given
  std::string theta_file;               // file
  bool has_fallback_theta = false;      // file
  double fallback_theta_radians = 0.0;  // file
  double mean_transmission = 0.0;       // random
  double sigma_transmission = 0.0;      // random
  std::uint64_t seed = 0;               // random
  std::string preset;                   // preset
  std::vector<double> sampled_transmissions;  // random: grid order
};

std::string manifest_json(const RunManifest& manifest);

}  // namespace splitmesh
