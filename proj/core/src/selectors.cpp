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

#include "spot/selectors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spot/score_cache.hpp"

namespace spot {

namespace {

void validate_config(const SelectionConfig& config, Index m) {
  if (config.k < 1) throw std::invalid_argument("k must be positive");
  if (config.s < 1) throw std::invalid_argument("s must be positive");
  if (config.s > config.k) throw std::invalid_argument("batch size s exceeds k");
  if (static_cast<Index>(config.k) > m) {
    throw std::invalid_argument("k = " + std::to_string(config.k) +
                                " exceeds the number of source points " +
                                std::to_string(m));
  }
  const bool needs_epsilon = config.stop_rule == StopRule::kEpsilon ||
                             config.stop_rule == StopRule::kWhicheverFirst;
  if (needs_epsilon && !config.epsilon) {
    throw std::invalid_argument("stop rule requires an epsilon threshold");
  }
  if (config.epsilon && *config.epsilon < 0.0) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
}

// Finalizes a selection: recover the plan over the chosen set, derive the
// weights from its row sums, and report the plan's objective.
PrototypeSet finalize_set(const SimilarityMatrix& similarity,
                          const SimplexWeights& q, std::vector<int> indices) {
  PrototypeSet set;
  set.plan = plan_for_set(similarity, q, indices);
  set.weights = weights_from_plan(*set.plan).values();
  set.objective = (set.plan->entries.array() *
                   similarity.entries(indices, Eigen::all).array())
                      .sum();
  set.indices = std::move(indices);
  return set;
}

// Top `count` candidates by (gain descending, index ascending).
std::vector<int> top_gains(const std::vector<int>& candidates,
                           const std::vector<double>& gains, int count) {
  std::vector<int> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  const auto better = [&](int a, int b) {
    if (gains[a] != gains[b]) return gains[a] > gains[b];
    return candidates[a] < candidates[b];
  };
  if (static_cast<size_t>(count) < order.size()) {
    std::partial_sort(order.begin(), order.begin() + count, order.end(), better);
    order.resize(count);
  } else {
    std::sort(order.begin(), order.end(), better);
  }
  std::vector<int> chosen(order.size());
  for (size_t i = 0; i < order.size(); ++i) chosen[i] = candidates[order[i]];
  return chosen;
}

}  // namespace

GreedyResult spot_greedy(const SimilarityMatrix& similarity,
                         const SimplexWeights& target_weights,
                         const SelectionConfig& config,
                         const ProgressFn& progress) {
  const Index m = similarity.rows();
  validate_config(config, m);
  const bool cap_at_k = config.stop_rule != StopRule::kEpsilon;
  const bool check_epsilon = config.stop_rule != StopRule::kCardinality;

  ScoreCache cache(similarity, target_weights);
  SelectionTrace trace;
  std::vector<int> candidates;
  std::vector<double> gains;
  int iteration = 0;

  while (true) {
    const int selected = static_cast<int>(cache.selected().size());
    int batch = config.s;
    if (cap_at_k) batch = std::min(batch, config.k - selected);
    if (batch <= 0) break;

    candidates.clear();
    for (int i = 0; i < static_cast<int>(m); ++i) {
      if (!cache.contains(i)) candidates.push_back(i);
    }
    if (candidates.empty()) break;
    batch = std::min(batch, static_cast<int>(candidates.size()));

    gains.resize(candidates.size());
    cache.gains(candidates, gains);
    std::vector<int> chosen = top_gains(candidates, gains, batch);

    const double before = cache.objective();
    cache.extend(chosen);
    const double after = cache.objective();

    ++iteration;
    trace.per_iteration.push_back({iteration, chosen, after, after - before});
    if (progress) progress(iteration, after);
    if (check_epsilon && after - before < *config.epsilon) break;
  }

  GreedyResult result;
  result.prototypes = finalize_set(similarity, target_weights, cache.selected());
  trace.total = result.prototypes.objective;
  result.trace = std::move(trace);
  return result;
}

PrototypeSet spot_simple(const SimilarityMatrix& similarity,
                         const SimplexWeights& target_weights, int k) {
  const Index m = similarity.rows();
  const Index n = similarity.cols();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<Index>(k) > m) {
    throw std::invalid_argument("k exceeds the number of source points");
  }
  if (target_weights.size() != n) {
    throw std::invalid_argument("target weights length does not match columns");
  }

  // Unrestricted assignment: every column's mass goes to its best row.
  const auto& s = similarity.entries;
  Vector mass = Vector::Zero(m);
  for (Index j = 0; j < n; ++j) {
    Index best = 0;
    double best_value = s(0, j);
    for (Index i = 1; i < m; ++i) {
      if (s(i, j) > best_value) {
        best_value = s(i, j);
        best = i;
      }
    }
    mass[best] += target_weights[j];
  }

  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](int a, int b) {
                      if (mass[a] != mass[b]) return mass[a] > mass[b];
                      return a < b;
                    });
  order.resize(static_cast<size_t>(k));
  return finalize_set(similarity, target_weights, std::move(order));
}

PrototypeSet brute_force_optimum(const SimilarityMatrix& similarity,
                                 const SimplexWeights& target_weights, int k) {
  const Index m = similarity.rows();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<Index>(k) > m) {
    throw std::invalid_argument("k exceeds the number of source points");
  }

  // Count subsets of sizes 1..k before enumerating.
  double subsets = 0.0;
  double binom = 1.0;
  for (int size = 1; size <= k; ++size) {
    binom = binom * static_cast<double>(m - size + 1) / static_cast<double>(size);
    subsets += binom;
    if (subsets > 1e6) {
      throw std::invalid_argument("instance too large for enumeration guard");
    }
  }

  std::vector<int> best_set;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<int> current;

  // Lexicographic enumeration with strict improvement keeps the
  // lexicographically smallest maximizer (shorter sets are visited first
  // within a prefix, so a tying superset never replaces its prefix).
  auto visit = [&](auto&& self, int next) -> void {
    if (!current.empty()) {
      const double value = objective_of(similarity, target_weights, current);
      if (value > best_value) {
        best_value = value;
        best_set = current;
      }
    }
    if (static_cast<int>(current.size()) == k) return;
    for (int i = next; i < static_cast<int>(m); ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);

  return finalize_set(similarity, target_weights, std::move(best_set));
}

GreedyResult k_medoids(const SimilarityMatrix& self_similarity, int k, int s) {
  if (self_similarity.rows() != self_similarity.cols()) {
    throw std::invalid_argument("medoid selection needs a square self-similarity");
  }
  SelectionConfig config;
  config.k = k;
  config.s = s;
  return spot_greedy(self_similarity, uniform_weights(self_similarity.cols()),
                     config);
}

}  // namespace spot
