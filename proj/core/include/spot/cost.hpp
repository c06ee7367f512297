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

#include <string>

#include "spot/dataset.hpp"
#include "spot/matrix.hpp"

namespace spot {

enum class MetricKind {
  kSquaredEuclidean,
  kEuclidean,
  kManhattan,
  kCosineDistance,
  kPrecomputed,
};

std::string to_string(MetricKind kind);
MetricKind metric_from_string(const std::string& name);

/// Pairwise transport costs between a source and a target set.
/// Entries are non-negative and finite.
struct GroundCost {
  RowMatrix entries;  // m x n
  MetricKind metric = MetricKind::kSquaredEuclidean;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
};

/// Distance between two points under a computable metric kind. Cosine
/// distance treats a pair of zero vectors as coincident (distance 0) and a
/// single zero vector as maximally dissimilar (distance 1).
double metric_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y,
                       MetricKind kind);

/// Computes entries_ij = metric(source_i, target_j). Row-parallel; results
/// are bit-identical to the sequential order.
GroundCost compute_ground_cost(const Dataset& source, const Dataset& target,
                               MetricKind kind);

/// Reads a precomputed cost matrix: CSV, m rows x n columns, no header.
GroundCost load_cost_csv(const std::string& path);

}  // namespace spot
