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

#include <map>
#include <string>
#include <vector>

#include "splitmesh/scheduler.hpp"

namespace splitmesh {

// Per-stage probability record of one evolution. stages[0] is the input
// distribution; stages[d] the distribution after anti-diagonal d. A p-array
// therefore produces 2p stages of 2p probabilities each.
struct EvolutionTrace {
  int grid_side = 0;
  std::vector<std::vector<double>> stages;
};

struct EvolveResult {
  PureState final_state;
  EvolutionTrace trace;
};

// Runs the input through every device in schedule order using the
// two-amplitude fast path: exactly grid_side^2 rotations. The final state
// equals compose_total(spec) * input.
EvolveResult evolve(const ArraySpec& spec, const PureState& input);

// Same evolution written into caller-owned storage; `out` buffers are reused
// when already sized, which keeps repeated runs allocation-free (the form
// timing loops should call).
void evolve_into(const ArraySpec& spec, const PureState& input,
                 EvolveResult& out);

// Dense product of the device matrices over an explicit application order
// (earliest first, i.e. later coordinates multiply on the left).
DenseOperator compose_ordered(const ArraySpec& spec,
                              std::span<const GridCoord> order);

// Dense total-array operator over the canonical schedule. Guarded to
// grid_side <= 512; evolve() has no such cap.
DenseOperator compose_total(const ArraySpec& spec);

enum class DetectorSide { kRight, kBottom };

std::string_view to_string(DetectorSide side);

struct DetectorEntry {
  std::string label;
  ChannelIndex channel = 0;
  DetectorSide side = DetectorSide::kRight;
  double probability = 0.0;
};

// Final-channel readout. Channel index and side (odd -> right column,
// even -> bottom row) are the ground truth; labels are presentation only.
struct DetectorReadout {
  std::vector<DetectorEntry> entries;
  double right_mass = 0.0;   // total probability on odd channels
  double bottom_mass = 0.0;  // total probability on even channels
};

using DetectorLabels = std::map<ChannelIndex, std::string>;

// Default labeling names channel k "D<k>". When a label map is supplied it
// overrides per channel; channels it omits fall back to "ch<k>" so mapped
// and unmapped names cannot collide.
DetectorReadout detector_readout(const PureState& final_state);
DetectorReadout detector_readout(const PureState& final_state,
                                 const DetectorLabels& labels);

// Detector names of the Mach-Zehnder embedding: its two monitored outputs
// are channel 3 ("D1") and channel 4 ("D2").
DetectorLabels mach_zehnder_detector_labels();

// Final probabilities of uniform arrays across a grid of mixing angles,
// one row per angle.
struct DetectorCurves {
  std::vector<double> thetas;
  std::vector<std::vector<double>> rows;
};

// Rows are always emitted in grid order; with max_threads > 1 the grid
// points are evaluated concurrently without changing the output.
DetectorCurves detector_curves(int grid_side,
                               const std::vector<MixingAngle>& theta_grid,
                               const PureState& input, int max_threads = 1);

}  // namespace splitmesh
