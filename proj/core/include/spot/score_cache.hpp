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

#include <span>
#include <vector>

#include "spot/matrix.hpp"
#include "spot/similarity.hpp"
#include "spot/simplex.hpp"

namespace spot {

/// The set objective over source subsets P:
///
///   f(P) = sum_j q_j * max_{i in P} S_ij,    f(empty) = 0.
///
/// Evaluated directly, independent of any cache state. Throws on an empty
/// or out-of-range set.
double objective_of(const SimilarityMatrix& similarity,
                    const SimplexWeights& target_weights,
                    std::span<const int> set);

/// Running per-target-column maxima for a growing selection P.
///
/// For each target column j the cache keeps kappa_j = max_{i in P} S_ij and
/// the source index attaining it, which makes the marginal gain of any
/// candidate an O(n) dot-like scan and extending by s rows an O(s n) update.
/// Ties in the column argmax go to the lowest source index.
///
/// The cache borrows the similarity matrix and target weights; both must
/// outlive it. Single writer; concurrent readers are safe between mutations.
class ScoreCache {
 public:
  ScoreCache(const SimilarityMatrix& similarity,
             const SimplexWeights& target_weights);

  /// f(P); exactly 0 while the selection is empty.
  double objective() const { return selected_.empty() ? 0.0 : objective_; }

  const std::vector<int>& selected() const { return selected_; }
  bool empty() const { return selected_.empty(); }
  bool contains(int index) const { return in_set_[static_cast<size_t>(index)] != 0; }
  Index num_sources() const { return similarity_->rows(); }
  Index num_targets() const { return similarity_->cols(); }

  /// Marginal gain f(P + {candidate}) - f(P). The candidate must not be in P.
  double gain(int candidate) const;

  /// Gains for several candidates at once, parallel over candidates. Output
  /// spans must match the candidate count.
  void gains(std::span<const int> candidates, std::span<double> out) const;

  /// Adds new rows to the selection, updating maxima, argmaxima and the
  /// objective in O(|new_indices| * n). Rows already selected are rejected.
  void extend(std::span<const int> new_indices);

  /// Per-column maxima / argmaxima. Only defined for a nonempty selection.
  const Vector& column_max() const;
  const std::vector<int>& column_argmax() const;

  const SimilarityMatrix& similarity() const { return *similarity_; }
  const SimplexWeights& target_weights() const { return *q_; }

 private:
  const SimilarityMatrix* similarity_;
  const SimplexWeights* q_;
  Vector column_max_;               // -inf sentinel while empty
  std::vector<int> column_argmax_;  // -1 sentinel while empty
  std::vector<int> selected_;
  std::vector<char> in_set_;
  double objective_ = 0.0;
};

}  // namespace spot
