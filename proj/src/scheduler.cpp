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

#include "splitmesh/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace splitmesh {

namespace {

void check_grid_side(int grid_side) {
  if (grid_side < 1) {
    throw std::invalid_argument("grid side must be >= 1, got " +
                                std::to_string(grid_side));
  }
}

}  // namespace

ArraySpec::ArraySpec(int grid_side, std::vector<MixingAngle> thetas)
    : side_(grid_side), thetas_(std::move(thetas)) {
  check_grid_side(grid_side);
  if (static_cast<int>(thetas_.size()) != side_ * side_) {
    throw std::invalid_argument(
        "theta assignment has " + std::to_string(thetas_.size()) +
        " entries, expected " + std::to_string(side_ * side_));
  }
}

ArraySpec ArraySpec::uniform(int grid_side, MixingAngle theta) {
  check_grid_side(grid_side);
  return ArraySpec(grid_side,
                   std::vector<MixingAngle>(grid_side * grid_side, theta));
}

ArraySpec ArraySpec::mach_zehnder() {
  const MixingAngle balanced(std::numbers::pi / 4);
  const MixingAngle mirror(std::numbers::pi / 2);
  return ArraySpec(2, {balanced, mirror, mirror, balanced});
}

MixingAngle ArraySpec::theta(int row, int col) const {
  if (row < 1 || row > side_ || col < 1 || col > side_) {
    throw std::out_of_range("device (" + std::to_string(row) + "," +
                            std::to_string(col) + ") outside the " +
                            std::to_string(side_) + "x" +
                            std::to_string(side_) + " grid");
  }
  return thetas_[(row - 1) * side_ + (col - 1)];
}

BeamSplitterSpec ArraySpec::device(int row, int col) const {
  return BeamSplitterSpec{row, col, theta(row, col)};
}

std::vector<GridCoord> DiagonalSchedule::flatten() const {
  std::vector<GridCoord> coords;
  coords.reserve(static_cast<std::size_t>(grid_side) * grid_side);
  for (const auto& diag : diagonals) {
    coords.insert(coords.end(), diag.begin(), diag.end());
  }
  return coords;
}

DiagonalSchedule diagonal_schedule(int grid_side) {
  check_grid_side(grid_side);
  DiagonalSchedule schedule;
  schedule.grid_side = grid_side;
  schedule.diagonals.resize(2 * grid_side - 1);
  visit_schedule(
      grid_side,
      [&](int row, int col) {
        schedule.diagonals[row + col - 2].push_back(GridCoord{row, col});
      },
      [](int) {});
  return schedule;
}

int diagonal_size(int r, int grid_side) {
  check_grid_side(grid_side);
  if (r < 1 || r > 2 * grid_side - 1) {
    throw std::out_of_range("diagonal index " + std::to_string(r) +
                            " out of range 1.." +
                            std::to_string(2 * grid_side - 1));
  }
  return r <= grid_side ? r : 2 * grid_side - r;
}

namespace {

// Box-Muller over mt19937_64. Doubles are built from the top 53 bits so the
// sample stream is fixed by the seed alone.
class SeededNormal {
 public:
  explicit SeededNormal(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

SampledArray sample_random_array(int grid_side,
                                 const RandomThetaPolicy& policy) {
  check_grid_side(grid_side);
  if (!(policy.sigma_transmission >= 0.0) ||
      !std::isfinite(policy.sigma_transmission) ||
      !std::isfinite(policy.mean_transmission)) {
    throw std::invalid_argument("random policy needs finite mean and sigma >= 0");
  }
  SeededNormal normal(policy.seed);
  const int devices = grid_side * grid_side;
  std::vector<double> transmissions;
  std::vector<MixingAngle> thetas;
  transmissions.reserve(devices);
  thetas.reserve(devices);
  for (int i = 0; i < devices; ++i) {
    const double draw =
        policy.mean_transmission + policy.sigma_transmission * normal.next();
    const double t = std::clamp(draw, 0.0, 100.0);
    transmissions.push_back(t);
    thetas.push_back(theta_from_transmission(TransmissionPercent(t)));
  }
  return SampledArray{ArraySpec(grid_side, std::move(thetas)),
                      std::move(transmissions)};
}

namespace {

MixingAngle parse_theta_token(const std::string& token) {
  if (token.rfind("T:", 0) == 0) {
    const std::string rest = token.substr(2);
    std::size_t pos = 0;
    double t = 0.0;
    try {
      t = std::stod(rest, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad transmission '" + token + "'");
    }
    if (pos != rest.size()) {
      throw std::invalid_argument("bad transmission '" + token + "'");
    }
    return theta_from_transmission(TransmissionPercent(t));
  }
  std::size_t pos = 0;
  double radians = 0.0;
  try {
    radians = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad angle '" + token + "'");
  }
  if (pos != token.size()) {
    throw std::invalid_argument("bad angle '" + token + "'");
  }
  return MixingAngle(radians);
}

}  // namespace

std::vector<ThetaMapEntry> parse_theta_map(std::istream& in) {
  std::vector<ThetaMapEntry> entries;
  std::set<std::pair<int, int>> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int row = 0, col = 0;
    std::string token;
    if (!(fields >> row)) continue;  // blank or comment-only line
    try {
      if (!(fields >> col >> token)) {
        throw std::invalid_argument("expected 'row col theta'");
      }
      std::string extra;
      if (fields >> extra) {
        throw std::invalid_argument("trailing token '" + extra + "'");
      }
      if (row < 1 || col < 1) {
        throw std::invalid_argument("device coordinates must be >= 1");
      }
      if (!seen.insert({row, col}).second) {
        throw std::invalid_argument("duplicate device (" +
                                    std::to_string(row) + "," +
                                    std::to_string(col) + ")");
      }
      entries.push_back({row, col, parse_theta_token(token)});
    } catch (const std::exception& e) {
      throw std::invalid_argument("theta map line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  return entries;
}

std::vector<ThetaMapEntry> parse_theta_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open theta map '" + path + "'");
  }
  return parse_theta_map(in);
}

ArraySpec array_from_entries(int grid_side,
                             std::span<const ThetaMapEntry> entries,
                             std::optional<MixingAngle> fallback) {
  check_grid_side(grid_side);
  std::vector<std::optional<MixingAngle>> grid(
      static_cast<std::size_t>(grid_side) * grid_side);
  for (const ThetaMapEntry& e : entries) {
    if (e.row < 1 || e.row > grid_side || e.col < 1 || e.col > grid_side) {
      throw std::out_of_range("device (" + std::to_string(e.row) + "," +
                              std::to_string(e.col) + ") outside the " +
                              std::to_string(grid_side) + "x" +
                              std::to_string(grid_side) + " grid");
    }
    grid[(e.row - 1) * grid_side + (e.col - 1)] = e.theta;
  }
  std::vector<MixingAngle> thetas;
  thetas.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].has_value()) {
      thetas.push_back(*grid[i]);
    } else if (fallback.has_value()) {
      thetas.push_back(*fallback);
    } else {
      const int row = static_cast<int>(i) / grid_side + 1;
      const int col = static_cast<int>(i) % grid_side + 1;
      throw std::invalid_argument(
          "theta map misses device (" + std::to_string(row) + "," +
          std::to_string(col) + ") and no default angle was given");
    }
  }
  return ArraySpec(grid_side, std::move(thetas));
}

}  // namespace splitmesh
