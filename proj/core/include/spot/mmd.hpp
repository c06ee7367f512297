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

#include <vector>

#include "spot/cost.hpp"
#include "spot/dataset.hpp"
#include "spot/matrix.hpp"
#include "spot/prototype_set.hpp"
#include "spot/simplex.hpp"

namespace spot {

/// Gaussian kernel data for kernel-mean scoring: the source Gram matrix and,
/// per source point, the mean kernel value against the target set.
struct KernelMatrix {
  RowMatrix gram;     // m x m, symmetric PSD, unit diagonal
  Vector cross_mean;  // length m, entries in (0, 1]
  double kernel_width = 1.0;
};

RowMatrix gaussian_gram(const Dataset& source, double sigma);
Vector gaussian_cross_mean(const Dataset& source, const Dataset& target,
                           double sigma);
KernelMatrix gaussian_kernel(const Dataset& source, const Dataset& target,
                             double sigma);

/// Kernel-mean objective l(w) = mu' w - 1/2 w' K w for non-negative w.
double mmd_objective(const KernelMatrix& kernel, const Vector& w);

struct MmdSelection {
  std::vector<int> indices;
  Vector weights;  // aligned with indices, non-negative
  double score = 0.0;
  std::vector<double> score_trace;   // score after each greedy step
  std::vector<Vector> weight_trace;  // weights after each greedy step
};

/// Greedy equal-weight selection: each step adds the candidate maximizing
/// l at uniform weights 1/(|P|+1) over P + {candidate}.
MmdSelection mmd_critic_select(const KernelMatrix& kernel, int k);

/// Greedy gradient selection with a non-negative weight refit: each step
/// adds the unselected candidate with the largest gradient of l at the
/// current w, then re-maximizes l over the selected support by projected
/// gradient ascent (step 1/L with L the row-sum norm of the restricted
/// Gram, clamp at zero, stop at projected-gradient norm 1e-8 or 1000
/// iterations).
MmdSelection protodash_select(const KernelMatrix& kernel, int k);

/// Couples a finished selection to the target by solving classical OT with
/// the normalized selection weights as the source marginal. The restricted
/// cost holds one row per selected prototype, in selection order. Small
/// instances (<= 400 cells) are solved exactly, larger ones entropically.
TransportPlan compose_with_ot(const MmdSelection& selection,
                              const GroundCost& restricted_cost,
                              const SimplexWeights& target_weights,
                              double sinkhorn_reg = 0.0);

}  // namespace spot
