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

#include "splitmesh/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splitmesh {

MixingAngle::MixingAngle(double radians) : radians_(radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("mixing angle must be finite");
  }
}

TransmissionPercent::TransmissionPercent(double percent) : percent_(percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw std::invalid_argument("transmission must lie in [0, 100], got " +
                                std::to_string(percent));
  }
}

MixingAngle theta_from_transmission(TransmissionPercent t) {
  return MixingAngle(std::acos(std::sqrt(t.percent() / 100.0)));
}

TransmissionPercent transmission_from_theta(MixingAngle theta) {
  const double c = std::cos(theta.radians());
  return TransmissionPercent(100.0 * c * c);
}

std::pair<ChannelIndex, ChannelIndex> coupled_channels(int row, int col,
                                                       int grid_side) {
  if (grid_side < 1) {
    throw std::invalid_argument("grid side must be >= 1, got " +
                                std::to_string(grid_side));
  }
  if (row < 1 || row > grid_side || col < 1 || col > grid_side) {
    throw std::out_of_range("device (" + std::to_string(row) + "," +
                            std::to_string(col) + ") outside the " +
                            std::to_string(grid_side) + "x" +
                            std::to_string(grid_side) + " grid");
  }
  return {2 * row - 1, 2 * col};
}

DenseOperator beam_splitter_matrix(const BeamSplitterSpec& spec,
                                   int grid_side) {
  const auto [ka, kb] = coupled_channels(spec.row, spec.col, grid_side);
  const int dim = 2 * grid_side;
  DenseOperator u = DenseOperator::Identity(dim, dim);
  const double c = std::cos(spec.theta.radians());
  const Complex cross(0.0, std::sin(spec.theta.radians()));
  u(ka - 1, ka - 1) = c;
  u(kb - 1, kb - 1) = c;
  u(ka - 1, kb - 1) = cross;
  u(kb - 1, ka - 1) = cross;
  return u;
}

void apply_beam_splitter_in_place(PureState& state,
                                  const BeamSplitterSpec& spec) {
  const auto [ka, kb] =
      coupled_channels(spec.row, spec.col, state.grid_side());
  state.rotate_pair(ka, kb, std::cos(spec.theta.radians()),
                    std::sin(spec.theta.radians()));
}

PureState apply_beam_splitter(PureState state, const BeamSplitterSpec& spec) {
  apply_beam_splitter_in_place(state, spec);
  return state;
}

std::pair<Complex, Complex> single_splitter_closed_form(MixingAngle theta) {
  const double c = std::cos(theta.radians());
  const double s = std::sin(theta.radians());
  return {Complex(c, 0.0), Complex(0.0, s)};
}

std::pair<Complex, Complex> mach_zehnder_closed_form(MixingAngle theta) {
  const double c = std::cos(theta.radians());
  const double s = std::sin(theta.radians());
  return {Complex(-2.0 * s * c, 0.0), Complex(0.0, c * c - s * s)};
}

}  // namespace splitmesh
