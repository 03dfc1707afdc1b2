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

#include "splitmesh/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splitmesh {

namespace {

constexpr int kDenseGridCap = 512;

// Entrywise max magnitude; NaN anywhere makes the defect NaN so that
// `defect <= tol` checks fail instead of silently passing.
double max_abs(const Eigen::MatrixXcd& m) {
  double result = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (std::isnan(a)) return a;
      if (a > result) result = a;
    }
  }
  return result;
}

}  // namespace

PureState dense_evolve(const ArraySpec& spec, const PureState& input) {
  if (spec.grid_side() > kDenseGridCap) {
    throw std::invalid_argument("dense evolution capped at grid side " +
                                std::to_string(kDenseGridCap) + ", got " +
                                std::to_string(spec.grid_side()));
  }
  if (input.grid_side() != spec.grid_side()) {
    throw std::invalid_argument(
        "state has " + std::to_string(input.channel_count()) +
        " channels, array expects " + std::to_string(2 * spec.grid_side()));
  }
  const int dim = input.channel_count();
  Eigen::VectorXcd v =
      Eigen::Map<const Eigen::VectorXcd>(input.amplitudes().data(), dim);
  for (const GridCoord& coord : diagonal_schedule(spec.grid_side()).flatten()) {
    v = beam_splitter_matrix(spec.device(coord.row, coord.col),
                             spec.grid_side()) *
        v;
  }
  return PureState(spec.grid_side(),
                   std::vector<Complex>(v.data(), v.data() + dim));
}

Defect unitarity_defect(const DenseOperator& u) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("unitarity defect needs a square matrix");
  }
  return max_abs(u.adjoint() * u -
                 DenseOperator::Identity(u.rows(), u.cols()));
}

Defect commutator_defect(const BeamSplitterSpec& a, const BeamSplitterSpec& b,
                         int grid_side) {
  const DenseOperator ma = beam_splitter_matrix(a, grid_side);
  const DenseOperator mb = beam_splitter_matrix(b, grid_side);
  return max_abs(ma * mb - mb * ma);
}

}  // namespace splitmesh
