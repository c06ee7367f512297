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

#include "spot/cost.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spot/parallel.hpp"

namespace spot {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kSquaredEuclidean: return "squared_euclidean";
    case MetricKind::kEuclidean: return "euclidean";
    case MetricKind::kManhattan: return "manhattan";
    case MetricKind::kCosineDistance: return "cosine_distance";
    case MetricKind::kPrecomputed: return "precomputed";
  }
  return "unknown";
}

MetricKind metric_from_string(const std::string& name) {
  if (name == "squared_euclidean") return MetricKind::kSquaredEuclidean;
  if (name == "euclidean") return MetricKind::kEuclidean;
  if (name == "manhattan") return MetricKind::kManhattan;
  if (name == "cosine_distance") return MetricKind::kCosineDistance;
  if (name == "precomputed") return MetricKind::kPrecomputed;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

namespace {

// Cosine distance 1 - <x, y> / (|x| |y|). Zero-norm vectors follow the
// identity convention: both zero -> 0, exactly one zero -> 1.
double cosine_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 && ny == 0.0) return 0.0;
  if (nx == 0.0 || ny == 0.0) return 1.0;
  const double value = 1.0 - x.dot(y) / (nx * ny);
  return value < 0.0 ? 0.0 : value;
}

}  // namespace

double metric_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y,
                       MetricKind kind) {
  switch (kind) {
    case MetricKind::kSquaredEuclidean:
      return (x - y).squaredNorm();
    case MetricKind::kEuclidean:
      return (x - y).norm();
    case MetricKind::kManhattan:
      return (x - y).cwiseAbs().sum();
    case MetricKind::kCosineDistance:
      return cosine_distance(x, y);
    case MetricKind::kPrecomputed:
      break;
  }
  throw std::invalid_argument("precomputed costs have no pointwise metric");
}

GroundCost compute_ground_cost(const Dataset& source, const Dataset& target,
                               MetricKind kind) {
  if (kind == MetricKind::kPrecomputed) {
    throw std::invalid_argument(
        "precomputed costs cannot be derived from datasets; load them instead");
  }
  if (source.dim() != target.dim()) {
    throw std::invalid_argument("dimension mismatch: source d=" +
                                std::to_string(source.dim()) + ", target d=" +
                                std::to_string(target.dim()));
  }
  if (!source.points.allFinite() || !target.points.allFinite()) {
    throw std::invalid_argument("NaN or infinite feature values");
  }

  const Index m = source.size();
  const Index n = target.size();
  GroundCost cost;
  cost.metric = kind;
  cost.entries.resize(m, n);
  auto& entries = cost.entries;
  const auto& xs = source.points;
  const auto& ys = target.points;

  parallel_for(0, m, [&](Index lo, Index hi) {
    for (Index i = lo; i < hi; ++i) {
      for (Index j = 0; j < n; ++j) {
        entries(i, j) = metric_distance(xs.row(i), ys.row(j), kind);
      }
    }
  });
  return cost;
}

GroundCost load_cost_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  std::vector<double> values;
  Index cols = -1;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Index row_cols = 0;
    while (std::getline(ss, cell, ',')) {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw std::runtime_error(path + ": row " + std::to_string(line_no) +
                                 ": cannot parse '" + cell + "' as a number");
      }
      if (!std::isfinite(value) || value < 0.0) {
        throw std::runtime_error(path + ": row " + std::to_string(line_no) +
                                 ": cost entries must be finite and non-negative");
      }
      values.push_back(value);
      ++row_cols;
    }
    if (cols < 0) {
      cols = row_cols;
    } else if (row_cols != cols) {
      throw std::runtime_error(path + ": row " + std::to_string(line_no) + " has " +
                               std::to_string(row_cols) + " fields, expected " +
                               std::to_string(cols));
    }
  }
  if (values.empty()) throw std::runtime_error(path + ": no data rows");

  GroundCost cost;
  cost.metric = MetricKind::kPrecomputed;
  cost.entries = Eigen::Map<const RowMatrix>(
      values.data(), static_cast<Index>(values.size()) / cols, cols);
  return cost;
}

}  // namespace spot
