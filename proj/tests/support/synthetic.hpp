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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "spot/dataset.hpp"
#include "spot/matrix.hpp"
#include "spot/similarity.hpp"
#include "spot/simplex.hpp"

namespace spot::testing {

// Box-Muller normal draws on top of mt19937_64 so synthetic data is
// identical on every standard library.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() {
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform();
    const double v = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * M_PI * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::mt19937_64& raw() { return rng_; }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Gaussian class blobs with unit within-class deviation and class means
// `separation` apart along distinct axes.
inline Dataset make_blobs(int classes, int per_class, int dim,
                          double separation, std::uint64_t seed) {
  NormalSampler sampler(seed);
  Dataset data;
  data.points.resize(static_cast<Index>(classes) * per_class, dim);
  data.labels.reserve(static_cast<size_t>(classes) * per_class);
  Index row = 0;
  for (int c = 0; c < classes; ++c) {
    for (int p = 0; p < per_class; ++p, ++row) {
      for (int d = 0; d < dim; ++d) {
        const double mean = d == (c % dim) ? separation : 0.0;
        data.points(row, d) = mean + sampler.normal();
      }
      data.labels.push_back(std::to_string(c));
    }
  }
  data.name = "blobs";
  return data;
}

inline RowMatrix random_matrix_open01(Index rows, Index cols,
                                      std::uint64_t seed) {
  NormalSampler sampler(seed);
  RowMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = sampler.uniform();
  }
  return out;
}

inline SimilarityMatrix random_similarity(Index rows, Index cols,
                                          std::uint64_t seed) {
  return similarity_from_entries(random_matrix_open01(rows, cols, seed));
}

inline SimplexWeights random_simplex(Index n, std::uint64_t seed) {
  NormalSampler sampler(seed);
  Vector values(n);
  for (Index i = 0; i < n; ++i) values[i] = sampler.uniform() + 1e-3;
  values /= values.sum();
  return SimplexWeights(values);
}

}  // namespace spot::testing
