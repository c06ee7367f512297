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

#include <functional>
#include <optional>
#include <vector>

#include "spot/prototype_set.hpp"
#include "spot/similarity.hpp"
#include "spot/simplex.hpp"

namespace spot {

enum class StopRule {
  kCardinality,     // run to exactly k selections
  kEpsilon,         // run until an iteration's increment drops below epsilon
  kWhicheverFirst,  // stop at k or at the epsilon threshold, whichever first
};

struct SelectionConfig {
  int k = 1;  // target cardinality, 1 <= s <= k <= m
  int s = 1;  // batch size per iteration
  std::optional<double> epsilon;
  StopRule stop_rule = StopRule::kCardinality;
};

struct TraceEntry {
  int iteration = 0;
  std::vector<int> added;
  double objective = 0.0;  // after this iteration
  double gain = 0.0;       // iteration increment
};

/// Per-iteration record of a greedy run; the objective sequence is
/// non-decreasing.
struct SelectionTrace {
  std::vector<TraceEntry> per_iteration;
  double total = 0.0;
};

struct GreedyResult {
  PrototypeSet prototypes;
  SelectionTrace trace;
};

using ProgressFn = std::function<void(int iteration, double objective)>;

/// Greedy incremental selection. Each iteration scores every unselected
/// candidate by its marginal gain and takes the top s (gain descending,
/// index ascending); the final iteration takes k mod s elements when s does
/// not divide k. Under the cardinality rule zero-gain iterations still grow
/// the set; the epsilon rules stop once an iteration's total increment falls
/// below epsilon. Returns the set with its recovered plan and weights.
GreedyResult spot_greedy(const SimilarityMatrix& similarity,
                         const SimplexWeights& target_weights,
                         const SelectionConfig& config,
                         const ProgressFn& progress = {});

/// Non-incremental heuristic: assigns every target column to its best row
/// over the whole source set, accumulates the resulting row masses, keeps
/// the top-k rows (mass descending, index ascending), and re-solves the
/// plan restricted to them.
PrototypeSet spot_simple(const SimilarityMatrix& similarity,
                         const SimplexWeights& target_weights, int k);

/// Exact maximizer by subset enumeration, sizes 1..k in lexicographic order;
/// ties keep the first (lexicographically smallest) set. Guarded against
/// instances with more than 1e6 subsets.
PrototypeSet brute_force_optimum(const SimilarityMatrix& similarity,
                                 const SimplexWeights& target_weights, int k);

/// Medoid selection as greedy selection on a square self-similarity with
/// uniform target weights.
GreedyResult k_medoids(const SimilarityMatrix& self_similarity, int k,
                       int s = 1);

}  // namespace spot
