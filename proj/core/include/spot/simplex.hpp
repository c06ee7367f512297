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

#include "spot/matrix.hpp"

namespace spot {

/// A point on the probability simplex: non-negative entries summing to 1
/// within 1e-9. Every constructor validates, so instances always satisfy
/// the invariant.
class SimplexWeights {
 public:
  explicit SimplexWeights(Vector values);

  const Vector& values() const { return values_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  Vector values_;
};

/// Uniform weights 1/n. n must be at least 1.
SimplexWeights uniform_weights(Index n);

}  // namespace spot
