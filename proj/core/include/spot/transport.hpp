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
#include <vector>

#include "spot/dataset.hpp"
#include "spot/matrix.hpp"
#include "spot/prototype_set.hpp"
#include "spot/simplex.hpp"

namespace spot {

/// Classical transport instance: minimize <cost, plan> over plans whose row
/// sums equal p and column sums equal q.
struct OtProblem {
  RowMatrix cost;  // k x n, non-negative finite
  SimplexWeights p;
  SimplexWeights q;
};

enum class LogDomainMode {
  kAuto,    // switch to log-domain scaling when reg / max(cost) < 0.05
  kAlways,  // always scale in the log domain
  kNever,   // plain scaling only; tiny reg raises an error
};

struct SinkhornConfig {
  double reg = 0.0;  // entropic regularization; <= 0 selects 0.1 * max(cost)
  int max_iters = 10000;
  double tol = 1e-6;  // L1 marginal violation target
  LogDomainMode log_domain = LogDomainMode::kAuto;
};

struct SinkhornResult {
  TransportPlan plan;
  double objective = 0.0;  // unregularized cost <C, plan>
  double marginal_violation = 0.0;
  int iterations = 0;
  bool converged = false;
  double reg = 0.0;  // the regularization actually used
};

/// Exact solver (transportation simplex: north-west-corner start, then
/// dual-based pivoting). Guarded to instances of at most 400 cells; the
/// result is a vertex plan with at most k + n - 1 nonzeros and both
/// marginals satisfied within 1e-9. Deterministic given its input.
TransportPlan solve_exact(const OtProblem& problem);

/// Entropic solver via alternating scaling. Non-convergence within
/// max_iters is reported through the `converged` flag, not an exception.
SinkhornResult solve_sinkhorn(const OtProblem& problem,
                              const SinkhornConfig& config = {});

/// Maps each plan row to the plan-weighted average of target points. Rows
/// carrying no mass yield an empty optional.
std::vector<std::optional<Vector>> barycentric_map(const TransportPlan& plan,
                                                   const Dataset& target);

}  // namespace spot
