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

#include "spot/similarity.hpp"

#include <stdexcept>
#include <string>

namespace spot {

SimilarityMatrix to_similarity(const GroundCost& cost, std::optional<double> beta) {
  if (cost.entries.size() == 0) throw std::invalid_argument("empty cost matrix");
  if (!cost.entries.allFinite()) throw std::invalid_argument("non-finite cost entries");
  const double max_cost = cost.entries.maxCoeff();
  const double offset = beta.value_or(max_cost + 1.0);
  if (offset <= max_cost) {
    throw std::invalid_argument("beta (" + std::to_string(offset) +
                                ") must strictly exceed the largest cost (" +
                                std::to_string(max_cost) + ")");
  }
  SimilarityMatrix similarity;
  similarity.beta = offset;
  similarity.entries = (offset - cost.entries.array()).matrix();
  return similarity;
}

SimilarityMatrix similarity_from_entries(RowMatrix entries) {
  if (entries.size() == 0) throw std::invalid_argument("empty similarity matrix");
  if (!entries.allFinite()) throw std::invalid_argument("non-finite similarity entries");
  SimilarityMatrix similarity;
  similarity.beta = entries.maxCoeff() + 1.0;
  similarity.entries = std::move(entries);
  return similarity;
}

}  // namespace spot
