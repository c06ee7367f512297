// Copyright 2026 The Authors.
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

#include <optional>
#include <span>
#include <vector>

#include "spot/matrix.hpp"
#include "spot/score_cache.hpp"
#include "spot/similarity.hpp"
#include "spot/simplex.hpp"

namespace spot {

/// A transport plan with prescribed column sums. Row r moves mass from the
/// source point row_index[r]; column_sums records the target weights the
/// plan was built against.
struct TransportPlan {
  RowMatrix entries;           // k x n, non-negative
  std::vector<int> row_index;  // source index per row
  Vector column_sums;          // prescribed q

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
};

/// A selected, weighted subset of the source set. `weights` aligns with
/// `indices` and equals the plan's row sums when the plan is present.
struct PrototypeSet {
  std::vector<int> indices;
  Vector weights;
  std::optional<TransportPlan> plan;
  double objective = 0.0;

  int size() const { return static_cast<int>(indices.size()); }
};

/// Recovers the optimal plan for a fixed set: each target column j puts its
/// whole mass q_j on the row of P with the largest similarity (ties to the
/// lowest source index). The plan's inner product with S_P equals f(P).
TransportPlan plan_for_set(const SimilarityMatrix& similarity,
                           const SimplexWeights& target_weights,
                           std::span<const int> set);

/// Prototype weights w = plan row sums. Rejects plans whose column sums
/// drifted from the prescribed target weights.
SimplexWeights weights_from_plan(const TransportPlan& plan);

}  // namespace spot
