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

#include <optional>
#include <string>
#include <vector>

#include "spot/matrix.hpp"

namespace spot {

/// A set of feature vectors with optional per-point class labels.
/// Points are rows of `points`; labels, when present, align with rows.
struct Dataset {
  RowMatrix points;                 // m x d
  std::vector<std::string> labels;  // empty, or exactly m entries
  std::string name;

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }
  bool has_labels() const { return !labels.empty(); }
};

/// Loads a dataset from a comma-delimited UTF-8 file. The header row is
/// mandatory; every column parses as a 64-bit real except the optional
/// label column selected by name. NaN or infinite feature values are
/// rejected at load time.
Dataset load_dataset(const std::string& path,
                     const std::optional<std::string>& label_column = {});

}  // namespace spot
