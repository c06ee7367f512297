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

#include "spot/mmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spot/parallel.hpp"
#include "spot/transport.hpp"

namespace spot {

namespace {

constexpr double kRefitGradTol = 1e-8;
constexpr int kRefitMaxIters = 1000;

void validate_sigma(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("kernel width must be positive");
}

void validate_k(int k, Index m) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (static_cast<Index>(k) > m) {
    throw std::invalid_argument("k exceeds the number of source points");
  }
}

}  // namespace

RowMatrix gaussian_gram(const Dataset& source, double sigma) {
  validate_sigma(sigma);
  const Index m = source.size();
  const double scale = 1.0 / (2.0 * sigma * sigma);
  RowMatrix gram(m, m);
  const auto& xs = source.points;
  parallel_for(0, m, [&](Index lo, Index hi) {
    for (Index i = lo; i < hi; ++i) {
      gram(i, i) = 1.0;
      for (Index j = 0; j < i; ++j) {
        const double value =
            std::exp(-(xs.row(i) - xs.row(j)).squaredNorm() * scale);
        gram(i, j) = value;
      }
    }
  });
  // Mirror the lower triangle so the matrix is exactly symmetric.
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < i; ++j) gram(j, i) = gram(i, j);
  }
  return gram;
}

Vector gaussian_cross_mean(const Dataset& source, const Dataset& target,
                           double sigma) {
  validate_sigma(sigma);
  if (source.dim() != target.dim()) {
    throw std::invalid_argument("dimension mismatch between source and target");
  }
  const Index m = source.size();
  const Index n = target.size();
  const double scale = 1.0 / (2.0 * sigma * sigma);
  Vector mean(m);
  const auto& xs = source.points;
  const auto& ys = target.points;
  parallel_for(0, m, [&](Index lo, Index hi) {
    for (Index i = lo; i < hi; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < n; ++j) {
        acc += std::exp(-(xs.row(i) - ys.row(j)).squaredNorm() * scale);
      }
      mean[i] = acc / static_cast<double>(n);
    }
  });
  return mean;
}

KernelMatrix gaussian_kernel(const Dataset& source, const Dataset& target,
                             double sigma) {
  KernelMatrix kernel;
  kernel.gram = gaussian_gram(source, sigma);
  kernel.cross_mean = gaussian_cross_mean(source, target, sigma);
  kernel.kernel_width = sigma;
  return kernel;
}

double mmd_objective(const KernelMatrix& kernel, const Vector& w) {
  if (w.size() != kernel.gram.rows()) {
    throw std::invalid_argument("weight length does not match the Gram matrix");
  }
  if (w.size() > 0 && w.minCoeff() < 0.0) {
    throw std::invalid_argument("negative weight");
  }
  return kernel.cross_mean.dot(w) - 0.5 * w.dot(kernel.gram * w);
}

MmdSelection mmd_critic_select(const KernelMatrix& kernel, int k) {
  const Index m = kernel.gram.rows();
  validate_k(k, m);
  MmdSelection selection;
  if (k == 0) return selection;

  const auto& gram = kernel.gram;
  const auto& mu = kernel.cross_mean;
  std::vector<char> chosen(static_cast<size_t>(m), 0);
  Vector gram_to_set = Vector::Zero(m);  // sum_{a in P} K(i, a)
  double mu_sum = 0.0;
  double quad_sum = 0.0;  // sum_{a,b in P} K(a, b)

  for (int step = 1; step <= k; ++step) {
    const double t = static_cast<double>(step);
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < m; ++c) {
      if (chosen[static_cast<size_t>(c)]) continue;
      const double quad = quad_sum + 2.0 * gram_to_set[c] + gram(c, c);
      const double score = (mu_sum + mu[c]) / t - 0.5 * quad / (t * t);
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(c);
      }
    }
    chosen[static_cast<size_t>(best)] = 1;
    selection.indices.push_back(best);
    quad_sum += 2.0 * gram_to_set[best] + gram(best, best);
    mu_sum += mu[best];
    gram_to_set += gram.col(best);
    selection.score_trace.push_back(best_score);
    selection.weight_trace.push_back(Vector::Constant(step, 1.0 / t));
  }

  const double weight = 1.0 / static_cast<double>(k);
  selection.weights = Vector::Constant(k, weight);
  selection.score = selection.score_trace.back();
  return selection;
}

namespace {

// Maximizes mu_P' w - 1/2 w' K_P w over w >= 0 by projected gradient ascent
// starting from `w`. Step 1/L with L the row-sum norm of K_P.
void refit_nonnegative(const RowMatrix& gram_p, const Vector& mu_p, Vector& w) {
  double lipschitz = gram_p.cwiseAbs().rowwise().sum().maxCoeff();
  if (lipschitz <= 0.0) lipschitz = 1.0;
  const double step = 1.0 / lipschitz;
  for (int it = 0; it < kRefitMaxIters; ++it) {
    const Vector grad = mu_p - gram_p * w;
    // Projected gradient: free coordinates everywhere, upward slopes only at
    // the boundary.
    double norm_sq = 0.0;
    for (Index i = 0; i < w.size(); ++i) {
      const double g = w[i] > 0.0 ? grad[i] : std::max(0.0, grad[i]);
      norm_sq += g * g;
    }
    if (std::sqrt(norm_sq) <= kRefitGradTol) break;
    w = (w + step * grad).cwiseMax(0.0);
  }
}

}  // namespace

MmdSelection protodash_select(const KernelMatrix& kernel, int k) {
  const Index m = kernel.gram.rows();
  validate_k(k, m);
  MmdSelection selection;
  if (k == 0) return selection;

  const auto& gram = kernel.gram;
  const auto& mu = kernel.cross_mean;
  std::vector<char> chosen(static_cast<size_t>(m), 0);
  std::vector<int> support;
  Vector w_support;

  for (int step = 0; step < k; ++step) {
    // Gradient of l at the current (sparse) w, restricted to candidates.
    Vector gram_w = Vector::Zero(m);
    for (size_t r = 0; r < support.size(); ++r) {
      gram_w += gram.col(support[r]) * w_support[static_cast<Index>(r)];
    }
    int best = -1;
    double best_grad = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < m; ++c) {
      if (chosen[static_cast<size_t>(c)]) continue;
      const double g = mu[c] - gram_w[c];
      if (g > best_grad) {
        best_grad = g;
        best = static_cast<int>(c);
      }
    }
    chosen[static_cast<size_t>(best)] = 1;
    support.push_back(best);

    Vector w_next(support.size());
    w_next.head(w_support.size()) = w_support;
    w_next[static_cast<Index>(support.size()) - 1] = 0.0;

    const Index sz = static_cast<Index>(support.size());
    RowMatrix gram_p(sz, sz);
    Vector mu_p(sz);
    for (Index a = 0; a < sz; ++a) {
      mu_p[a] = mu[support[static_cast<size_t>(a)]];
      for (Index b = 0; b < sz; ++b) {
        gram_p(a, b) = gram(support[static_cast<size_t>(a)],
                            support[static_cast<size_t>(b)]);
      }
    }
    refit_nonnegative(gram_p, mu_p, w_next);
    w_support = std::move(w_next);
    selection.score_trace.push_back(mu_p.dot(w_support) -
                                    0.5 * w_support.dot(gram_p * w_support));
    selection.weight_trace.push_back(w_support);
  }

  selection.indices = std::move(support);
  selection.weights = std::move(w_support);
  selection.score = selection.score_trace.back();
  return selection;
}

TransportPlan compose_with_ot(const MmdSelection& selection,
                              const GroundCost& restricted_cost,
                              const SimplexWeights& target_weights,
                              double sinkhorn_reg) {
  const Index k = static_cast<Index>(selection.indices.size());
  if (k == 0) throw std::invalid_argument("empty selection");
  if (restricted_cost.rows() != k) {
    throw std::invalid_argument("restricted cost rows do not match the selection");
  }
  const double total = selection.weights.sum();
  if (total <= 0.0) {
    throw std::invalid_argument("selection weights are all zero; cannot normalize");
  }

  OtProblem problem{restricted_cost.entries,
                    SimplexWeights(selection.weights / total), target_weights};
  TransportPlan plan;
  if (k * restricted_cost.cols() <= 400) {
    plan = solve_exact(problem);
  } else {
    SinkhornConfig config;
    config.reg = sinkhorn_reg;
    plan = solve_sinkhorn(problem, config).plan;
  }
  plan.row_index = selection.indices;
  return plan;
}

}  // namespace spot
