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

// Independent reference implementations used to pin expected values in
// tests. Everything here is deliberately brute force and shares no code
// with the library paths it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spot/matrix.hpp"

namespace spot::testing {

// Optimum of the column-decoupled restricted transport problem: every target
// column places its whole mass q_j on one row of `set`, and the best row is
// found by enumerating the placements explicitly.
inline double lp_enumeration_objective(const RowMatrix& similarity,
                                       const Vector& q,
                                       const std::vector<int>& set) {
  double total = 0.0;
  for (Index j = 0; j < similarity.cols(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i : set) best = std::max(best, similarity(i, j) * q[j]);
    total += best;
  }
  return total;
}

// Exact maximizer over subsets of size 1..k, visited in lexicographic order
// with strict improvement, so ties keep the lexicographically smallest set.
struct EnumeratedOptimum {
  std::vector<int> set;
  double value = -std::numeric_limits<double>::infinity();
};

inline EnumeratedOptimum exhaustive_optimum(const RowMatrix& similarity,
                                            const Vector& q, int k) {
  EnumeratedOptimum best;
  std::vector<int> current;
  const int m = static_cast<int>(similarity.rows());
  auto visit = [&](auto&& self, int next) -> void {
    if (!current.empty()) {
      const double value = lp_enumeration_objective(similarity, q, current);
      if (value > best.value) {
        best.value = value;
        best.set = current;
      }
    }
    if (static_cast<int>(current.size()) == k) return;
    for (int i = next; i < m; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

// Minimal transport cost by enumerating basic solutions: every support of
// k + n - 1 cells whose allocation solves the marginal equations and stays
// non-negative is a candidate vertex.
inline double ot_vertex_enumeration(const RowMatrix& cost, const Vector& p,
                                    const Vector& q) {
  const int k = static_cast<int>(cost.rows());
  const int n = static_cast<int>(cost.cols());
  const int cells = k * n;
  const int basis_size = k + n - 1;
  double best = std::numeric_limits<double>::infinity();

  std::vector<int> support(basis_size);
  auto try_support = [&]() {
    // Solve for allocations on the support via least squares on the
    // marginal constraints; reject infeasible or rank-deficient supports.
    Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(k + n, basis_size);
    Eigen::VectorXd rhs(k + n);
    rhs.head(k) = p;
    rhs.tail(n) = q;
    for (int t = 0; t < basis_size; ++t) {
      const int row = support[t] / n;
      const int col = support[t] % n;
      constraints(row, t) = 1.0;
      constraints(k + col, t) = 1.0;
    }
    const Eigen::VectorXd alloc =
        constraints.colPivHouseholderQr().solve(rhs);
    if ((constraints * alloc - rhs).cwiseAbs().maxCoeff() > 1e-9) return;
    if (alloc.minCoeff() < -1e-12) return;
    double value = 0.0;
    for (int t = 0; t < basis_size; ++t) {
      value += std::max(0.0, alloc[t]) * cost(support[t] / n, support[t] % n);
    }
    best = std::min(best, value);
  };

  auto choose = [&](auto&& self, int next, int depth) -> void {
    if (depth == basis_size) {
      try_support();
      return;
    }
    for (int c = next; c < cells; ++c) {
      support[depth] = c;
      self(self, c + 1, depth + 1);
    }
  };
  choose(choose, 0, 0);
  if (!std::isfinite(best)) throw std::runtime_error("no feasible vertex found");
  return best;
}

// Central finite differences of a scalar function around w.
template <typename F>
Vector central_difference_gradient(F&& fn, const Vector& w, double h) {
  Vector grad(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    Vector lo = w;
    Vector hi = w;
    lo[i] -= h;
    hi[i] += h;
    grad[i] = (fn(hi) - fn(lo)) / (2.0 * h);
  }
  return grad;
}

}  // namespace spot::testing
