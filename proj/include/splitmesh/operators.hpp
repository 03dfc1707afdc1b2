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

#include <Eigen/Dense>
#include <utility>

#include "splitmesh/state.hpp"

namespace splitmesh {

using DenseOperator = Eigen::MatrixXcd;

// Mixing angle of a beam splitter, in radians. theta = pi/4 is the balanced
// splitter, pi/2 a mirror, 0 fully transparent. Any finite value is accepted;
// construction from a transmission lands in [0, pi/2].
class MixingAngle {
 public:
  explicit MixingAngle(double radians);
  double radians() const { return radians_; }

 private:
  double radians_;
};

// Transmission coefficient as a percentage in [0, 100].
// transmission/100 = cos^2(theta), reflection/100 = sin^2(theta).
class TransmissionPercent {
 public:
  explicit TransmissionPercent(double percent);
  double percent() const { return percent_; }

 private:
  double percent_;
};

MixingAngle theta_from_transmission(TransmissionPercent t);
TransmissionPercent transmission_from_theta(MixingAngle theta);

// One device of the array: grid position (1-based row/column) plus its
// mixing angle.
struct BeamSplitterSpec {
  int row = 0;
  int col = 0;
  MixingAngle theta;
};

// The pair of channels a device at (row, col) couples: the odd/horizontal
// channel 2*row-1 and the even/vertical channel 2*col.
std::pair<ChannelIndex, ChannelIndex> coupled_channels(int row, int col,
                                                       int grid_side);

// Dense 2p x 2p matrix of one device: identity everywhere except the
// two-level block on the coupled channel pair, which carries cos(theta) on
// the diagonal and i*sin(theta) on the cross terms.
DenseOperator beam_splitter_matrix(const BeamSplitterSpec& spec,
                                   int grid_side);

// Fast path: rotates the two coupled amplitudes in place, O(1) per device.
// Componentwise identical to multiplying by beam_splitter_matrix.
void apply_beam_splitter_in_place(PureState& state,
                                  const BeamSplitterSpec& spec);

PureState apply_beam_splitter(PureState state, const BeamSplitterSpec& spec);

// Closed forms used as test oracles. Both report the (horizontal, vertical)
// output amplitude pair for the input ket |1> of a two-channel system.
//   single splitter:            (cos t, i sin t)
//   splitter-mirror-splitter:   (-2 sin t cos t, i(cos^2 t - sin^2 t))
std::pair<Complex, Complex> single_splitter_closed_form(MixingAngle theta);
std::pair<Complex, Complex> mach_zehnder_closed_form(MixingAngle theta);

}  // namespace splitmesh
