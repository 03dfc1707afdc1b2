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

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "splitmesh/operators.hpp"

namespace splitmesh {

// Version tag for the device application order, recorded in run manifests.
inline constexpr std::string_view kScheduleOrderTag = "antidiagonal-mdesc-1";

struct GridCoord {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

// A p x p beam splitter array with one mixing angle per device.
class ArraySpec {
 public:
  // `thetas` in row-major grid order, length grid_side^2.
  ArraySpec(int grid_side, std::vector<MixingAngle> thetas);

  /// Every device set to the same angle.
  static ArraySpec uniform(int grid_side, MixingAngle theta);

  // The Mach-Zehnder embedding: p=2 with balanced splitters at (1,1) and
  // (2,2) and mirrors (theta = pi/2) at (1,2) and (2,1).
  static ArraySpec mach_zehnder();

  int grid_side() const { return side_; }
  int device_count() const { return side_ * side_; }

  MixingAngle theta(int row, int col) const;
  BeamSplitterSpec device(int row, int col) const;

 private:
  int side_;
  std::vector<MixingAngle> thetas_;
};

// The anti-diagonal application order. Diagonal d (1-based, d = 1..2p-1)
// holds every coordinate with row+col = d+1, listed in descending row;
// diagonals are applied first to last. Devices on one diagonal touch
// disjoint channel pairs, so their order within the diagonal is irrelevant.
struct DiagonalSchedule {
  int grid_side = 0;
  std::vector<std::vector<GridCoord>> diagonals;

  /// All coordinates in application order.
  std::vector<GridCoord> flatten() const;
};

DiagonalSchedule diagonal_schedule(int grid_side);

// Streams the canonical schedule without materializing coordinate lists:
// on_device(row, col) for every device, on_diagonal_end(d) after each
// anti-diagonal. Visits exactly the coordinates of diagonal_schedule(), in
// the same order; this is the allocation-free walk the evolution hot path
// uses.
template <typename DeviceVisitor, typename DiagonalVisitor>
void visit_schedule(int grid_side, DeviceVisitor&& on_device,
                    DiagonalVisitor&& on_diagonal_end) {
  if (grid_side < 1) {
    throw std::invalid_argument("grid side must be >= 1, got " +
                                std::to_string(grid_side));
  }
  for (int d = 1; d <= 2 * grid_side - 1; ++d) {
    const int row_hi = std::min(grid_side, d);
    const int row_lo = std::max(1, d + 1 - grid_side);
    for (int row = row_hi; row >= row_lo; --row) on_device(row, d + 1 - row);
    on_diagonal_end(d);
  }
}

/// Number of devices on anti-diagonal r of a p x p array: r for r <= p,
/// otherwise 2p-r. Valid for r = 1..2p-1.
int diagonal_size(int r, int grid_side);

// Seeded per-device transmission sampling: each device's transmission
// percentage is drawn i.i.d. from normal(mean, sigma) and clamped to
// [0, 100].
struct RandomThetaPolicy {
  double mean_transmission = 50.0;
  double sigma_transmission = 10.0;
  std::uint64_t seed = 0;
};

struct SampledArray {
  ArraySpec spec;
  std::vector<double> transmissions;  // row-major grid order, as sampled
};

// Pure function of (grid_side, policy): the same seed always yields a
// bit-identical array. Sampling uses mt19937_64 with a Box-Muller normal
// transform so the stream does not depend on the standard library's
// unspecified normal_distribution.
SampledArray sample_random_array(int grid_side, const RandomThetaPolicy& policy);

// Theta-map file format: one device per line, "row col theta_radians" or
// "row col T:<percent>", '#' starts a comment. Duplicate coordinates are an
// error.
struct ThetaMapEntry {
  int row = 0;
  int col = 0;
  MixingAngle theta;
};

std::vector<ThetaMapEntry> parse_theta_map(std::istream& in);
std::vector<ThetaMapEntry> parse_theta_map_file(const std::string& path);

// Builds an ArraySpec from parsed entries; devices missing from the map get
// `fallback`, or raise an error when no fallback is given.
ArraySpec array_from_entries(int grid_side,
                             std::span<const ThetaMapEntry> entries,
                             std::optional<MixingAngle> fallback);

}  // namespace splitmesh
