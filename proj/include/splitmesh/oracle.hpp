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

#include "splitmesh/simulator.hpp"

namespace splitmesh {

// Slow-path verification instruments. These deliberately avoid the
// two-amplitude fast path: every step goes through explicit dense matrices.
// Exercised by tests and the `verify` subcommand only.

// Max-norm (largest entry magnitude) of a residual matrix.
using Defect = double;

// Evolves by full dense matrix-vector products, one beam_splitter_matrix per
// device in schedule order. Capped at grid_side <= 512.
PureState dense_evolve(const ArraySpec& spec, const PureState& input);

/// Max-norm of (U^dagger U - I).
Defect unitarity_defect(const DenseOperator& u);

/// Max-norm of (AB - BA) for two device matrices embedded in a p-array.
Defect commutator_defect(const BeamSplitterSpec& a, const BeamSplitterSpec& b,
                         int grid_side);

}  // namespace splitmesh
