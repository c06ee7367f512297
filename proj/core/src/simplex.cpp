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

#include "spot/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spot {

SimplexWeights::SimplexWeights(Vector values) : values_(std::move(values)) {
  if (values_.size() == 0) throw std::invalid_argument("empty weight vector");
  if (!values_.allFinite()) throw std::invalid_argument("non-finite weights");
  if (values_.minCoeff() < 0.0) throw std::invalid_argument("negative weight");
  const double sum = values_.sum();
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("weights sum to " + std::to_string(sum) +
                                ", expected 1 within 1e-9");
  }
}

SimplexWeights uniform_weights(Index n) {
  if (n < 1) throw std::invalid_argument("simplex dimension must be at least 1");
  return SimplexWeights(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

}  // namespace spot
