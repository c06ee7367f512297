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

#include "spot/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "spot/parallel.hpp"
#include "spot/score_cache.hpp"
#include "spot/selectors.hpp"
#include "spot/similarity.hpp"
#include "spot/transport.hpp"

namespace spot {

namespace {

// Hand-rolled Fisher-Yates so shuffles are identical on every platform
// (std::shuffle leaves the draw sequence implementation-defined).
void deterministic_shuffle(std::vector<int>& values, std::mt19937_64& rng) {
  for (size_t i = values.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng() % i);
    std::swap(values[i - 1], values[j]);
  }
}

std::map<std::string, std::vector<int>> group_by_label(const Dataset& pool) {
  if (!pool.has_labels()) throw std::invalid_argument("pool has no labels");
  std::map<std::string, std::vector<int>> groups;
  for (Index i = 0; i < pool.size(); ++i) {
    groups[pool.labels[static_cast<size_t>(i)]].push_back(static_cast<int>(i));
  }
  return groups;
}

}  // namespace

ClassificationResult nearest_prototype_classify(
    const RowMatrix& prototype_points,
    const std::vector<std::string>& prototype_labels,
    const std::vector<int>& tie_order, const Dataset& test, MetricKind metric) {
  const Index k = prototype_points.rows();
  if (k == 0) throw std::invalid_argument("empty prototype set");
  if (static_cast<Index>(prototype_labels.size()) != k ||
      static_cast<Index>(tie_order.size()) != k) {
    throw std::invalid_argument("prototype labels/order do not match the points");
  }
  if (prototype_points.cols() != test.dim()) {
    throw std::invalid_argument("dimension mismatch between prototypes and test set");
  }

  ClassificationResult result;
  result.predicted.resize(static_cast<size_t>(test.size()));
  parallel_for(0, test.size(), [&](Index lo, Index hi) {
    for (Index t = lo; t < hi; ++t) {
      Index best = 0;
      double best_dist = metric_distance(prototype_points.row(0), test.points.row(t), metric);
      for (Index r = 1; r < k; ++r) {
        const double d = metric_distance(prototype_points.row(r), test.points.row(t), metric);
        if (d < best_dist || (d == best_dist && tie_order[static_cast<size_t>(r)] <
                                                    tie_order[static_cast<size_t>(best)])) {
          best_dist = d;
          best = r;
        }
      }
      result.predicted[static_cast<size_t>(t)] = prototype_labels[static_cast<size_t>(best)];
    }
  });

  if (test.has_labels()) {
    Index correct = 0;
    for (Index t = 0; t < test.size(); ++t) {
      if (result.predicted[static_cast<size_t>(t)] == test.labels[static_cast<size_t>(t)]) {
        ++correct;
      }
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  }
  return result;
}

ClassificationResult nearest_prototype_classify(const Dataset& source,
                                                const PrototypeSet& prototypes,
                                                const Dataset& test,
                                                MetricKind metric) {
  if (prototypes.indices.empty()) throw std::invalid_argument("empty prototype set");
  if (!source.has_labels()) {
    throw std::invalid_argument("source labels are required for classification");
  }
  const Index k = static_cast<Index>(prototypes.indices.size());
  RowMatrix points(k, source.dim());
  std::vector<std::string> labels(static_cast<size_t>(k));
  for (Index r = 0; r < k; ++r) {
    const int idx = prototypes.indices[static_cast<size_t>(r)];
    if (idx < 0 || static_cast<Index>(idx) >= source.size()) {
      throw std::invalid_argument("prototype index out of range");
    }
    points.row(r) = source.points.row(idx);
    labels[static_cast<size_t>(r)] = source.labels[static_cast<size_t>(idx)];
  }
  return nearest_prototype_classify(points, labels, prototypes.indices, test, metric);
}

Dataset build_skewed_target(const Dataset& pool, const SkewSpec& spec) {
  if (spec.z_percent < 0.0 || spec.z_percent > 100.0) {
    throw std::invalid_argument("z_percent must lie in [0, 100]");
  }
  auto groups = group_by_label(pool);
  if (groups.size() < 2) {
    throw std::invalid_argument("pool must contain at least two classes");
  }
  auto skew_it = groups.find(spec.skew_class);
  if (skew_it == groups.end()) {
    throw std::invalid_argument("unknown class '" + spec.skew_class + "'");
  }

  const auto avail_skew = static_cast<long long>(skew_it->second.size());
  long long min_avail_other = std::numeric_limits<long long>::max();
  for (const auto& [label, members] : groups) {
    if (label == spec.skew_class) continue;
    min_avail_other = std::min(min_avail_other, static_cast<long long>(members.size()));
  }
  const auto num_other = static_cast<long long>(groups.size()) - 1;

  // Largest nominal size whose per-class counts the pool can supply. The
  // skew class takes round(z% N), every other class floor((100-z)% N / g);
  // the rounding remainder is dropped.
  long long skew_count = -1;
  long long other_count = -1;
  for (long long nominal = pool.size(); nominal >= 1; --nominal) {
    const long long c = std::llround(spec.z_percent / 100.0 * static_cast<double>(nominal));
    const long long o = static_cast<long long>(
        std::floor((100.0 - spec.z_percent) / 100.0 * static_cast<double>(nominal) /
                   static_cast<double>(num_other)));
    if (c <= avail_skew && o <= min_avail_other && c + num_other * o >= 1) {
      skew_count = c;
      other_count = o;
      break;
    }
  }
  if (skew_count < 0) {
    throw std::invalid_argument("infeasible skew proportions for this pool");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<int> selected;
  auto draw = [&rng, &selected](std::vector<int> members, long long count) {
    deterministic_shuffle(members, rng);
    selected.insert(selected.end(), members.begin(), members.begin() + count);
  };
  draw(skew_it->second, skew_count);
  for (const auto& [label, members] : groups) {
    if (label == spec.skew_class) continue;
    draw(members, other_count);
  }
  std::sort(selected.begin(), selected.end());

  Dataset target;
  target.points.resize(static_cast<Index>(selected.size()), pool.dim());
  target.labels.reserve(selected.size());
  for (size_t r = 0; r < selected.size(); ++r) {
    target.points.row(static_cast<Index>(r)) = pool.points.row(selected[r]);
    target.labels.push_back(pool.labels[static_cast<size_t>(selected[r])]);
  }
  target.name = pool.name.empty() ? "skewed" : pool.name + "_skewed";
  return target;
}

std::vector<Criticism> select_criticisms(const PrototypeSet& prototypes,
                                         const KernelMatrix& pool_kernel,
                                         int count) {
  const Index m = pool_kernel.gram.rows();
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  if (prototypes.indices.empty()) throw std::invalid_argument("empty prototype set");
  if (prototypes.weights.size() != static_cast<Index>(prototypes.indices.size())) {
    throw std::invalid_argument("prototype weights do not match indices");
  }

  std::vector<char> excluded(static_cast<size_t>(m), 0);
  for (int idx : prototypes.indices) {
    if (idx < 0 || static_cast<Index>(idx) >= m) {
      throw std::invalid_argument("prototype index out of range of the pool kernel");
    }
    excluded[static_cast<size_t>(idx)] = 1;
  }
  const Index available = m - static_cast<Index>(prototypes.indices.size());
  if (count > available) {
    throw std::invalid_argument("requested " + std::to_string(count) +
                                " criticisms but only " + std::to_string(available) +
                                " pool points remain");
  }

  std::vector<Criticism> scored;
  scored.reserve(static_cast<size_t>(available));
  for (Index t = 0; t < m; ++t) {
    if (excluded[static_cast<size_t>(t)]) continue;
    double proto_term = 0.0;
    for (size_t r = 0; r < prototypes.indices.size(); ++r) {
      proto_term += prototypes.weights[static_cast<Index>(r)] *
                    pool_kernel.gram(t, prototypes.indices[r]);
    }
    scored.push_back({static_cast<int>(t), pool_kernel.cross_mean[t] - proto_term});
  }
  std::sort(scored.begin(), scored.end(), [](const Criticism& a, const Criticism& b) {
    const double wa = std::abs(a.witness);
    const double wb = std::abs(b.witness);
    if (wa != wb) return wa > wb;
    return a.index < b.index;
  });
  scored.resize(static_cast<size_t>(count));
  return scored;
}

const std::vector<std::string>& experiment_methods() {
  static const std::vector<std::string> methods = {
      "spot_greedy",    "spot_simple",   "mmd_critic",   "protodash",
      "mmd_critic+ot", "protodash+ot",  "random"};
  return methods;
}

namespace {

// Everything one experiment run produces for one method: the selection
// order up to max(k_grid) plus whatever is needed to rebuild weights and
// mapped prototypes for every k prefix.
struct RunSelection {
  std::vector<int> order;
  const MmdSelection* mmd = nullptr;  // weight history for protodash prefixes
  double seconds = 0.0;
};

struct RunContext {
  const Dataset* source;
  Dataset target;
  SimilarityMatrix similarity;
  GroundCost cost;
  SimplexWeights q;
  Vector cross_mean;  // empty unless an mmd method runs
};

bool is_mmd_method(const std::string& method) {
  return method.rfind("mmd_critic", 0) == 0 || method.rfind("protodash", 0) == 0;
}

bool is_ot_variant(const std::string& method) {
  return method.size() > 3 && method.substr(method.size() - 3) == "+ot";
}

// Classifies the k-prefix of a selection against the run's target set.
double prefix_accuracy(const RunContext& ctx, const ExperimentConfig& config,
                       const std::string& method, const RunSelection& sel,
                       int k) {
  const Dataset& source = *ctx.source;
  std::vector<int> prefix(sel.order.begin(), sel.order.begin() + k);

  const bool map_via_own_plan =
      config.cross_domain && (method == "spot_greedy" || method == "spot_simple");
  const bool map_via_composed_ot = config.cross_domain && is_ot_variant(method);

  if (!map_via_own_plan && !map_via_composed_ot) {
    PrototypeSet set;
    set.indices = prefix;
    ClassificationResult r =
        nearest_prototype_classify(source, set, ctx.target, config.metric);
    return *r.accuracy;
  }

  TransportPlan plan;
  if (map_via_own_plan) {
    plan = plan_for_set(ctx.similarity, ctx.q, prefix);
  } else {
    MmdSelection prefix_selection;
    prefix_selection.indices = prefix;
    prefix_selection.weights = sel.mmd->weight_trace[static_cast<size_t>(k) - 1];
    GroundCost restricted;
    restricted.metric = ctx.cost.metric;
    restricted.entries = ctx.cost.entries(prefix, Eigen::all);
    plan = compose_with_ot(prefix_selection, restricted, ctx.q, config.ot_reg);
  }

  const auto images = barycentric_map(plan, ctx.target);
  std::vector<Index> mapped_rows;
  for (Index r = 0; r < static_cast<Index>(images.size()); ++r) {
    if (images[static_cast<size_t>(r)]) mapped_rows.push_back(r);
  }
  if (mapped_rows.empty()) {
    throw std::runtime_error("no prototype carries mass after mapping");
  }
  RowMatrix points(static_cast<Index>(mapped_rows.size()), ctx.target.dim());
  std::vector<std::string> labels;
  std::vector<int> order;
  for (size_t r = 0; r < mapped_rows.size(); ++r) {
    const Index row = mapped_rows[r];
    const int src = prefix[static_cast<size_t>(row)];
    points.row(static_cast<Index>(r)) = images[static_cast<size_t>(row)]->transpose();
    labels.push_back(source.labels[static_cast<size_t>(src)]);
    order.push_back(src);
  }
  ClassificationResult r =
      nearest_prototype_classify(points, labels, order, ctx.target, config.metric);
  return *r.accuracy;
}

}  // namespace

std::vector<ExperimentResult> run_experiment(const Dataset& source,
                                             const Dataset& target_pool,
                                             const ExperimentConfig& config) {
  if (config.methods.empty()) throw std::invalid_argument("no methods requested");
  for (const auto& method : config.methods) {
    const auto& known = experiment_methods();
    if (std::find(known.begin(), known.end(), method) == known.end()) {
      throw std::invalid_argument("unknown method '" + method + "'");
    }
  }
  if (config.k_grid.empty()) throw std::invalid_argument("empty k grid");
  if (config.runs < 1) throw std::invalid_argument("runs must be positive");
  if (!source.has_labels()) {
    throw std::invalid_argument("experiments need a labeled source set");
  }
  if (!target_pool.has_labels()) {
    throw std::invalid_argument("experiments need a labeled target pool");
  }
  const int k_max = *std::max_element(config.k_grid.begin(), config.k_grid.end());
  const int k_min = *std::min_element(config.k_grid.begin(), config.k_grid.end());
  if (k_min < 1) throw std::invalid_argument("k grid entries must be positive");
  if (static_cast<Index>(k_max) > source.size()) {
    throw std::invalid_argument("k grid exceeds the source size");
  }

  const bool any_mmd = std::any_of(config.methods.begin(), config.methods.end(),
                                   [](const auto& m) { return is_mmd_method(m); });
  RowMatrix shared_gram;
  if (any_mmd) shared_gram = gaussian_gram(source, config.kernel_sigma);

  const size_t num_methods = config.methods.size();
  const size_t num_ks = config.k_grid.size();
  // acc[method][k][run], objective summed over runs.
  std::vector<std::vector<std::vector<double>>> acc(
      num_methods, std::vector<std::vector<double>>(
                       num_ks, std::vector<double>(static_cast<size_t>(config.runs))));
  std::vector<std::vector<double>> objective_sum(num_methods,
                                                 std::vector<double>(num_ks, 0.0));
  std::vector<double> wall(num_methods, 0.0);
  std::mutex agg_mutex;

  auto execute_run = [&](int run) {
    try {
      Dataset target;
      if (config.skew) {
        SkewSpec spec = *config.skew;
        spec.seed = config.seed + static_cast<std::uint64_t>(run);
        target = build_skewed_target(target_pool, spec);
      } else {
        target = target_pool;
      }
      GroundCost cost = compute_ground_cost(source, target, config.metric);
      SimilarityMatrix similarity = to_similarity(cost);
      SimplexWeights q = uniform_weights(target.size());
      RunContext ctx{&source,         std::move(target), std::move(similarity),
                     std::move(cost), std::move(q),      Vector()};
      if (any_mmd) {
        ctx.cross_mean = gaussian_cross_mean(source, ctx.target, config.kernel_sigma);
      }

      for (size_t mi = 0; mi < num_methods; ++mi) {
        const std::string& method = config.methods[mi];
        RunSelection sel;
        MmdSelection mmd_selection;

        const auto t0 = std::chrono::steady_clock::now();
        if (method == "spot_greedy") {
          SelectionConfig greedy_config;
          greedy_config.k = k_max;
          greedy_config.s = std::min(config.s, k_max);
          sel.order = spot_greedy(ctx.similarity, ctx.q, greedy_config)
                          .prototypes.indices;
        } else if (method == "spot_simple") {
          sel.order = spot_simple(ctx.similarity, ctx.q,
                                  static_cast<int>(source.size()))
                          .indices;
        } else if (method == "random") {
          std::vector<int> order(static_cast<size_t>(source.size()));
          std::iota(order.begin(), order.end(), 0);
          std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(run));
          deterministic_shuffle(order, rng);
          order.resize(static_cast<size_t>(k_max));
          sel.order = std::move(order);
        } else {
          KernelMatrix kernel;
          kernel.gram = shared_gram;
          kernel.cross_mean = ctx.cross_mean;
          kernel.kernel_width = config.kernel_sigma;
          mmd_selection = method.rfind("mmd_critic", 0) == 0
                              ? mmd_critic_select(kernel, k_max)
                              : protodash_select(kernel, k_max);
          sel.order = mmd_selection.indices;
          sel.mmd = &mmd_selection;
        }
        const auto t1 = std::chrono::steady_clock::now();
        sel.seconds = std::chrono::duration<double>(t1 - t0).count();

        for (size_t ki = 0; ki < num_ks; ++ki) {
          const int k = config.k_grid[ki];
          std::vector<int> prefix(sel.order.begin(), sel.order.begin() + k);
          const double objective = objective_of(ctx.similarity, ctx.q, prefix);
          const double accuracy = prefix_accuracy(ctx, config, method, sel, k);
          std::lock_guard<std::mutex> lock(agg_mutex);
          acc[mi][ki][static_cast<size_t>(run)] = accuracy;
          objective_sum[mi][ki] += objective;
        }
        std::lock_guard<std::mutex> lock(agg_mutex);
        wall[mi] += sel.seconds;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("run " + std::to_string(run) + ": " + e.what());
    }
  };

  parallel_for(0, config.runs, [&](Index lo, Index hi) {
    for (Index run = lo; run < hi; ++run) execute_run(static_cast<int>(run));
  });

  std::vector<ExperimentResult> results;
  results.reserve(num_methods);
  for (size_t mi = 0; mi < num_methods; ++mi) {
    ExperimentResult result;
    result.method = config.methods[mi];
    result.runs = config.runs;
    result.wall_time_s = wall[mi];
    for (size_t ki = 0; ki < num_ks; ++ki) {
      const auto& samples = acc[mi][ki];
      double mean = 0.0;
      for (double a : samples) mean += a;
      mean /= static_cast<double>(samples.size());
      double var = 0.0;
      for (double a : samples) var += (a - mean) * (a - mean);
      var /= static_cast<double>(samples.size());
      CurvePoint point;
      point.k = config.k_grid[ki];
      point.acc_mean = mean;
      point.acc_std = std::sqrt(std::max(0.0, var));
      point.objective = objective_sum[mi][ki] / static_cast<double>(config.runs);
      result.curve.push_back(point);
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace spot
