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

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace splitmesh {

using Complex = std::complex<double>;

// 1-based positional channel index. Odd channels run horizontally (one per
// device row), even channels vertically (one per device column).
using ChannelIndex = int;

// Norm deviation accepted when constructing a state from raw amplitudes.
inline constexpr double kStateNormTolerance = 1e-9;

/// Euclidean norm of an amplitude vector (not required to be normalized).
double vector_norm(std::span<const Complex> amplitudes);

// A single-photon state over the 2*grid_side positional channels.
// Instances are normalized at construction and immutable afterwards, except
// through rotate_pair(), the mutation used by the evolution fast path.
class PureState {
 public:
  struct Term {
    ChannelIndex channel = 0;
    Complex amplitude;
  };

  // Takes ownership of `amplitudes` (length 2*grid_side); the vector must
  // have unit norm within kStateNormTolerance.
  PureState(int grid_side, std::vector<Complex> amplitudes);

  /// The basis ket |k>: amplitude 1 on channel k, 0 elsewhere.
  static PureState basis(ChannelIndex k, int grid_side);

  // Assembles a state from (channel, amplitude) terms. Channels must be
  // distinct and in range. With auto_normalize the result is scaled to unit
  // norm (the terms must not all be zero); without it the terms must already
  // have unit norm within kStateNormTolerance.
  static PureState superposition(const std::vector<Term>& terms, int grid_side,
                                 bool auto_normalize);

  int channel_count() const { return static_cast<int>(amps_.size()); }
  int grid_side() const { return channel_count() / 2; }

  /// Amplitude on channel k (1-based, bounds-checked).
  Complex amplitude(ChannelIndex k) const;

  const std::vector<Complex>& amplitudes() const { return amps_; }

  /// Per-channel detection probabilities |amplitude|^2, in channel order.
  std::vector<double> probabilities() const;

  double norm() const;

  // Two-channel mixer primitive: replaces the amplitudes (a, b) on channels
  // (ka, kb) with (cos_t*a + i*sin_t*b, i*sin_t*a + cos_t*b). All other
  // amplitudes are untouched. This is the only mutation a state supports.
  void rotate_pair(ChannelIndex ka, ChannelIndex kb, double cos_t,
                   double sin_t);

 private:
  std::vector<Complex> amps_;
};

// Parses the CLI state literal: either a bare channel index ("3") or a
// comma-separated superposition "k:re[+im i]", e.g.
// "1:0.70710678,2:0.70710678" or "3:0-1i". Whitespace is rejected.
// Superpositions are normalized when auto_normalize is set.
PureState parse_state_literal(std::string_view text, int grid_side,
                              bool auto_normalize = true);

}  // namespace splitmesh
