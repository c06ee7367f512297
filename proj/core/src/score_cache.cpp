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

#include "spot/score_cache.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "spot/parallel.hpp"

namespace spot {

namespace {

void check_index(int index, Index m) {
  if (index < 0 || static_cast<Index>(index) >= m) {
    throw std::invalid_argument("source index " + std::to_string(index) +
                                " out of range [0, " + std::to_string(m) + ")");
  }
}

}  // namespace

double objective_of(const SimilarityMatrix& similarity,
                    const SimplexWeights& target_weights,
                    std::span<const int> set) {
  if (set.empty()) {
    throw std::invalid_argument("objective of the empty set is 0 by convention; "
                                "evaluate it through an empty cache instead");
  }
  const Index m = similarity.rows();
  const Index n = similarity.cols();
  if (target_weights.size() != n) {
    throw std::invalid_argument("target weights length does not match columns");
  }
  for (int i : set) check_index(i, m);

  const auto& s = similarity.entries;
  const auto& q = target_weights.values();
  double total = 0.0;
  for (Index j = 0; j < n; ++j) {
    double best = s(set[0], j);
    for (size_t r = 1; r < set.size(); ++r) best = std::max(best, s(set[r], j));
    total += q[j] * best;
  }
  return total;
}

ScoreCache::ScoreCache(const SimilarityMatrix& similarity,
                       const SimplexWeights& target_weights)
    : similarity_(&similarity), q_(&target_weights) {
  if (target_weights.size() != similarity.cols()) {
    throw std::invalid_argument("target weights length does not match columns");
  }
  column_max_ = Vector::Constant(similarity.cols(),
                                 -std::numeric_limits<double>::infinity());
  column_argmax_.assign(static_cast<size_t>(similarity.cols()), -1);
  in_set_.assign(static_cast<size_t>(similarity.rows()), 0);
}

double ScoreCache::gain(int candidate) const {
  check_index(candidate, num_sources());
  if (contains(candidate)) {
    throw std::invalid_argument("candidate " + std::to_string(candidate) +
                                " is already selected");
  }
  const Index n = num_targets();
  const double* row = similarity_->entries.data() + static_cast<size_t>(candidate) * n;
  const double* q = q_->values().data();
  double g = 0.0;
  if (selected_.empty()) {
    for (Index j = 0; j < n; ++j) g += q[j] * row[j];
    return g;
  }
  const double* cm = column_max_.data();
  for (Index j = 0; j < n; ++j) g += q[j] * std::max(0.0, row[j] - cm[j]);
  return g;
}

void ScoreCache::gains(std::span<const int> candidates, std::span<double> out) const {
  if (candidates.size() != out.size()) {
    throw std::invalid_argument("gain output size mismatch");
  }
  for (int c : candidates) {
    check_index(c, num_sources());
    if (contains(c)) {
      throw std::invalid_argument("candidate " + std::to_string(c) +
                                  " is already selected");
    }
  }
  const Index n = num_targets();
  const double* base = similarity_->entries.data();
  const double* q = q_->values().data();
  const bool from_empty = selected_.empty();
  const double* cm = column_max_.data();

  parallel_for(0, static_cast<Index>(candidates.size()), [&](Index lo, Index hi) {
    for (Index c = lo; c < hi; ++c) {
      const double* row = base + static_cast<size_t>(candidates[c]) * n;
      double g = 0.0;
      if (from_empty) {
        for (Index j = 0; j < n; ++j) g += q[j] * row[j];
      } else {
        for (Index j = 0; j < n; ++j) g += q[j] * std::max(0.0, row[j] - cm[j]);
      }
      out[c] = g;
    }
  });
}

void ScoreCache::extend(std::span<const int> new_indices) {
  const Index n = num_targets();
  const double* base = similarity_->entries.data();
  const double* q = q_->values().data();
  for (int idx : new_indices) {
    check_index(idx, num_sources());
    if (contains(idx)) {
      throw std::invalid_argument("index " + std::to_string(idx) +
                                  " is already selected");
    }
    double* cm = column_max_.data();
    int* am = column_argmax_.data();
    const double* row = base + static_cast<size_t>(idx) * n;
    if (selected_.empty()) {
      // First row: every column improves from the empty sentinel.
      double obj = 0.0;
      for (Index j = 0; j < n; ++j) {
        cm[j] = row[j];
        am[j] = idx;
        obj += q[j] * row[j];
      }
      objective_ = obj;
    } else {
      double delta = 0.0;
      for (Index j = 0; j < n; ++j) {
        const double v = row[j];
        if (v > cm[j]) {
          delta += q[j] * (v - cm[j]);
          cm[j] = v;
          am[j] = idx;
        } else if (v == cm[j] && idx < am[j]) {
          am[j] = idx;  // lowest source index wins ties
        }
      }
      objective_ += delta;
    }
    selected_.push_back(idx);
    in_set_[static_cast<size_t>(idx)] = 1;
  }
}

const Vector& ScoreCache::column_max() const {
  if (selected_.empty()) {
    throw std::logic_error("an empty cache has no column maxima");
  }
  return column_max_;
}

const std::vector<int>& ScoreCache::column_argmax() const {
  if (selected_.empty()) {
    throw std::logic_error("an empty cache has no column argmaxima");
  }
  return column_argmax_;
}

}  // namespace spot
