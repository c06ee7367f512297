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

#include "spot/cost.hpp"
#include "spot/matrix.hpp"

namespace spot {

/// Similarities S_ij = beta - C_ij for an offset beta > max(C), turning the
/// transport minimization into a maximization. Entries built this way are
/// strictly positive.
struct SimilarityMatrix {
  RowMatrix entries;  // m x n, finite
  double beta = 0.0;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
};

/// Converts a ground cost to similarities. When beta is omitted it defaults
/// to max(C) + 1; an explicit beta must strictly exceed max(C).
SimilarityMatrix to_similarity(const GroundCost& cost,
                               std::optional<double> beta = {});

/// Wraps a raw entry matrix (synthetic instances, tests). Entries must be
/// finite; beta is recorded as max entry + 1 for consistency.
SimilarityMatrix similarity_from_entries(RowMatrix entries);

}  // namespace spot
