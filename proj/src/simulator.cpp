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

#include "splitmesh/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace splitmesh {

namespace {

// 2p x 2p complex doubles; beyond this the dense oracle path is refused.
constexpr int kDenseGridCap = 512;

void check_dense_cap(int grid_side) {
  if (grid_side > kDenseGridCap) {
    throw std::invalid_argument("dense composition capped at grid side " +
                                std::to_string(kDenseGridCap) + ", got " +
                                std::to_string(grid_side));
  }
}

}  // namespace

EvolveResult evolve(const ArraySpec& spec, const PureState& input) {
  EvolveResult out{input, {}};
  evolve_into(spec, input, out);
  return out;
}

void evolve_into(const ArraySpec& spec, const PureState& input,
                 EvolveResult& out) {
  if (input.grid_side() != spec.grid_side()) {
    throw std::invalid_argument(
        "state has " + std::to_string(input.channel_count()) +
        " channels, array expects " + std::to_string(2 * spec.grid_side()));
  }
  const int channels = input.channel_count();
  out.final_state = input;
  out.trace.grid_side = spec.grid_side();
  out.trace.stages.resize(2 * spec.grid_side());
  for (auto& row : out.trace.stages) row.resize(channels);

  PureState& state = out.final_state;
  const std::vector<Complex>& amps = state.amplitudes();
  auto snapshot = [&](std::vector<double>& row) {
    for (int k = 0; k < channels; ++k) row[k] = std::norm(amps[k]);
  };
  snapshot(out.trace.stages[0]);
  visit_schedule(
      spec.grid_side(),
      [&](int row, int col) {
        apply_beam_splitter_in_place(state, spec.device(row, col));
      },
      [&](int d) { snapshot(out.trace.stages[d]); });
}

DenseOperator compose_ordered(const ArraySpec& spec,
                              std::span<const GridCoord> order) {
  check_dense_cap(spec.grid_side());
  const int dim = 2 * spec.grid_side();
  DenseOperator total = DenseOperator::Identity(dim, dim);
  // Left-multiplying by a device matrix only rewrites the two coupled rows;
  // entrywise this matches the full dense product exactly.
  for (const GridCoord& coord : order) {
    const BeamSplitterSpec device = spec.device(coord.row, coord.col);
    const auto [ka, kb] =
        coupled_channels(device.row, device.col, spec.grid_side());
    const Complex diag(std::cos(device.theta.radians()), 0.0);
    const Complex cross(0.0, std::sin(device.theta.radians()));
    const Eigen::RowVectorXcd row_a = total.row(ka - 1);
    total.row(ka - 1) = diag * row_a + cross * total.row(kb - 1);
    total.row(kb - 1) = cross * row_a + diag * total.row(kb - 1);
  }
  return total;
}

DenseOperator compose_total(const ArraySpec& spec) {
  const auto order = diagonal_schedule(spec.grid_side()).flatten();
  return compose_ordered(spec, order);
}

std::string_view to_string(DetectorSide side) {
  return side == DetectorSide::kRight ? "right" : "bottom";
}

namespace {

DetectorReadout readout_impl(const PureState& final_state,
                             const DetectorLabels* labels) {
  DetectorReadout readout;
  const std::vector<double> probs = final_state.probabilities();
  readout.entries.reserve(probs.size());
  for (int k = 1; k <= final_state.channel_count(); ++k) {
    DetectorEntry entry;
    entry.channel = k;
    entry.side = (k % 2 == 1) ? DetectorSide::kRight : DetectorSide::kBottom;
    entry.probability = probs[k - 1];
    if (labels == nullptr) {
      entry.label = "D" + std::to_string(k);
    } else if (auto it = labels->find(k); it != labels->end()) {
      entry.label = it->second;
    } else {
      entry.label = "ch" + std::to_string(k);
    }
    if (entry.side == DetectorSide::kRight) {
      readout.right_mass += entry.probability;
    } else {
      readout.bottom_mass += entry.probability;
    }
    readout.entries.push_back(std::move(entry));
  }
  return readout;
}

}  // namespace

DetectorReadout detector_readout(const PureState& final_state) {
  return readout_impl(final_state, nullptr);
}

DetectorReadout detector_readout(const PureState& final_state,
                                 const DetectorLabels& labels) {
  return readout_impl(final_state, &labels);
}

DetectorLabels mach_zehnder_detector_labels() {
  return {{3, "D1"}, {4, "D2"}};
}

DetectorCurves detector_curves(int grid_side,
                               const std::vector<MixingAngle>& theta_grid,
                               const PureState& input, int max_threads) {
  if (theta_grid.empty()) {
    throw std::invalid_argument("theta grid must not be empty");
  }
  if (input.grid_side() != grid_side) {
    throw std::invalid_argument(
        "state has " + std::to_string(input.channel_count()) +
        " channels, array expects " + std::to_string(2 * grid_side));
  }
  DetectorCurves curves;
  curves.thetas.reserve(theta_grid.size());
  for (const MixingAngle& theta : theta_grid) {
    curves.thetas.push_back(theta.radians());
  }
  curves.rows.resize(theta_grid.size());

  auto fill_row = [&](std::size_t i) {
    const ArraySpec spec = ArraySpec::uniform(grid_side, theta_grid[i]);
    curves.rows[i] = evolve(spec, input).final_state.probabilities();
  };

  const int points = static_cast<int>(theta_grid.size());
  const int threads = std::clamp(max_threads, 1, points);
  if (threads == 1) {
    for (std::size_t i = 0; i < theta_grid.size(); ++i) fill_row(i);
    return curves;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < theta_grid.size();
           i = next.fetch_add(1)) {
        fill_row(i);
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  return curves;
}

}  // namespace splitmesh
