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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spot/cost.hpp"
#include "spot/dataset.hpp"
#include "spot/mmd.hpp"
#include "spot/prototype_set.hpp"

namespace spot {

struct ClassificationResult {
  std::vector<std::string> predicted;
  std::optional<double> accuracy;  // present when the test set is labeled
};

/// 1-nearest-prototype classification: each test point takes the label of
/// its closest prototype under the given metric, ties to the lowest source
/// index.
ClassificationResult nearest_prototype_classify(const Dataset& source,
                                                const PrototypeSet& prototypes,
                                                const Dataset& test,
                                                MetricKind metric);

/// Variant with explicit prototype points (e.g. after barycentric mapping).
/// `tie_order` carries the source index per prototype for tie-breaking.
ClassificationResult nearest_prototype_classify(
    const RowMatrix& prototype_points,
    const std::vector<std::string>& prototype_labels,
    const std::vector<int>& tie_order, const Dataset& test, MetricKind metric);

/// Target composition where one class makes up z percent of the set and the
/// remaining classes share the rest uniformly.
struct SkewSpec {
  std::string skew_class;
  double z_percent = 50.0;  // in [0, 100]
  std::uint64_t seed = 0;
};

/// Draws the largest target achievable from the pool: for a nominal size N,
/// the skew class contributes round(z% * N) instances and every other class
/// floor((100-z)% * N / (G-1)), any remainder dropped; N is the largest
/// value for which all class counts are available. Sampling is without
/// replacement and fully determined by the seed.
Dataset build_skewed_target(const Dataset& pool, const SkewSpec& spec);

struct Criticism {
  int index = 0;
  double witness = 0.0;
};

/// Points of the pool worst explained by the prototypes: ranks non-selected
/// pool points by |witness| where
///   witness(x) = mean_j kernel(x, y_j) - sum_i w_i kernel(x, p_i),
/// ties to the lowest index. The kernel must be built over the pool with
/// cross means against the represented target set.
std::vector<Criticism> select_criticisms(const PrototypeSet& prototypes,
                                         const KernelMatrix& pool_kernel,
                                         int count);

struct ExperimentConfig {
  std::vector<std::string> methods;
  std::vector<int> k_grid;
  int runs = 10;
  std::uint64_t seed = 0;
  std::optional<SkewSpec> skew;  // per-run seed derived from seed + run index
  MetricKind metric = MetricKind::kSquaredEuclidean;
  double kernel_sigma = 1.0;
  double ot_reg = 0.0;        // 0 selects the solver default
  bool cross_domain = false;  // barycentrically map prototypes for plan-based methods
  int s = 1;                  // greedy batch size
};

struct CurvePoint {
  int k = 0;
  double acc_mean = 0.0;
  double acc_std = 0.0;
  double objective = 0.0;  // mean f(P_k) across runs
};

struct ExperimentResult {
  std::string method;
  int runs = 0;
  std::vector<CurvePoint> curve;
  double wall_time_s = 0.0;  // selector time summed over runs
};

/// Valid method names for run_experiment.
const std::vector<std::string>& experiment_methods();

/// Runs every method over the k grid for the configured number of runs.
/// Each run rebuilds the target (re-sampling the skew draw with a
/// run-specific seed), selects prototypes once up to max(k_grid), and
/// scores every k prefix with the nearest-prototype classifier. Runs may
/// execute concurrently; aggregation joins them by run index, so results
/// do not depend on the thread count.
std::vector<ExperimentResult> run_experiment(const Dataset& source,
                                             const Dataset& target_pool,
                                             const ExperimentConfig& config);

}  // namespace spot
