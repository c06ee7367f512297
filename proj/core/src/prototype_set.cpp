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

#include "spot/prototype_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spot {

TransportPlan plan_for_set(const SimilarityMatrix& similarity,
                           const SimplexWeights& target_weights,
                           std::span<const int> set) {
  if (set.empty()) throw std::invalid_argument("cannot build a plan for an empty set");
  const Index m = similarity.rows();
  const Index n = similarity.cols();
  if (target_weights.size() != n) {
    throw std::invalid_argument("target weights length does not match columns");
  }
  const Index k = static_cast<Index>(set.size());
  for (int i : set) {
    if (i < 0 || static_cast<Index>(i) >= m) {
      throw std::invalid_argument("source index " + std::to_string(i) + " out of range");
    }
  }

  TransportPlan plan;
  plan.entries = RowMatrix::Zero(k, n);
  plan.row_index.assign(set.begin(), set.end());
  plan.column_sums = target_weights.values();

  const auto& s = similarity.entries;
  for (Index j = 0; j < n; ++j) {
    Index best_row = 0;
    double best_value = s(set[0], j);
    int best_source = set[0];
    for (Index r = 1; r < k; ++r) {
      const double v = s(set[r], j);
      if (v > best_value || (v == best_value && set[r] < best_source)) {
        best_value = v;
        best_row = r;
        best_source = set[r];
      }
    }
    plan.entries(best_row, j) = target_weights[j];
  }
  return plan;
}

SimplexWeights weights_from_plan(const TransportPlan& plan) {
  if (plan.rows() == 0) throw std::invalid_argument("empty plan");
  if (plan.column_sums.size() != plan.cols()) {
    throw std::invalid_argument("plan column-sum vector has the wrong length");
  }
  if (plan.entries.minCoeff() < 0.0) {
    throw std::invalid_argument("plan entries must be non-negative");
  }
  const Vector sums = plan.entries.colwise().sum();
  for (Index j = 0; j < plan.cols(); ++j) {
    if (std::abs(sums[j] - plan.column_sums[j]) > 1e-9) {
      throw std::invalid_argument("plan column " + std::to_string(j) +
                                  " sums to " + std::to_string(sums[j]) +
                                  ", expected " + std::to_string(plan.column_sums[j]));
    }
  }
  return SimplexWeights(plan.entries.rowwise().sum());
}

}  // namespace spot
