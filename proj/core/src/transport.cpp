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

#include "spot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace spot {

namespace {

constexpr Index kExactCellGuard = 400;
constexpr double kReducedCostTol = 1e-10;
constexpr int kMaxPivots = 100000;

void validate_problem(const OtProblem& problem) {
  if (problem.cost.rows() == 0 || problem.cost.cols() == 0) {
    throw std::invalid_argument("empty cost matrix");
  }
  if (!problem.cost.allFinite() || problem.cost.minCoeff() < 0.0) {
    throw std::invalid_argument("cost entries must be finite and non-negative");
  }
  if (problem.p.size() != problem.cost.rows()) {
    throw std::invalid_argument("source marginal length does not match cost rows");
  }
  if (problem.q.size() != problem.cost.cols()) {
    throw std::invalid_argument("target marginal length does not match cost columns");
  }
}

// Basic cells of the transportation simplex form a spanning tree on the
// bipartite row/column graph; duals and pivot cycles are both resolved by
// walking that tree.
struct Basis {
  struct Cell {
    int row;
    int col;
    double alloc;
  };
  std::vector<Cell> cells;
  std::vector<std::vector<int>> by_row;  // cell ids incident to each row
  std::vector<std::vector<int>> by_col;

  Basis(int k, int n) : by_row(k), by_col(n) {}

  void add(int row, int col, double alloc) {
    by_row[row].push_back(static_cast<int>(cells.size()));
    by_col[col].push_back(static_cast<int>(cells.size()));
    cells.push_back({row, col, alloc});
  }

  void remove(int cell_id) {
    auto detach = [cell_id](std::vector<int>& list) {
      list.erase(std::find(list.begin(), list.end(), cell_id));
    };
    detach(by_row[cells[cell_id].row]);
    detach(by_col[cells[cell_id].col]);
    // Swap-remove; patch the moved cell's id in both adjacency lists.
    const int last = static_cast<int>(cells.size()) - 1;
    if (cell_id != last) {
      cells[cell_id] = cells[last];
      for (int& id : by_row[cells[cell_id].row]) {
        if (id == last) id = cell_id;
      }
      for (int& id : by_col[cells[cell_id].col]) {
        if (id == last) id = cell_id;
      }
    }
    cells.pop_back();
  }
};

// North-west-corner initial basic feasible solution: exactly k + n - 1
// basic cells, degenerate zero allocations included.
Basis northwest_corner(const Vector& p, const Vector& q, Basis basis) {
  const int k = static_cast<int>(p.size());
  const int n = static_cast<int>(q.size());
  int i = 0;
  int j = 0;
  double remaining_p = p[0];
  double remaining_q = q[0];
  while (true) {
    const double move = std::min(remaining_p, remaining_q);
    basis.add(i, j, move);
    remaining_p -= move;
    remaining_q -= move;
    if (i == k - 1 && j == n - 1) break;
    // Advance the exhausted side; forced moves on the last row/column keep
    // the other side's residual. Ties advance the row, leaving a degenerate
    // zero cell that keeps the basis a spanning tree.
    if (i == k - 1) {
      ++j;
      remaining_q = q[j];
    } else if (j == n - 1) {
      ++i;
      remaining_p = p[i];
    } else if (remaining_p <= remaining_q) {
      ++i;
      remaining_p = p[i];
    } else {
      ++j;
      remaining_q = q[j];
    }
  }
  return basis;
}

// Duals u, v with u[0] = 0 solved by propagating u_i + v_j = C_ij over the
// basis tree.
void solve_duals(const Basis& basis, const RowMatrix& cost, Vector& u, Vector& v) {
  const int k = static_cast<int>(u.size());
  std::vector<char> row_done(k, 0), col_done(static_cast<size_t>(v.size()), 0);
  std::deque<int> queue;  // node ids: rows are [0, k), columns are k + j
  u[0] = 0.0;
  row_done[0] = 1;
  queue.push_back(0);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    if (node < k) {
      for (int id : basis.by_row[node]) {
        const auto& cell = basis.cells[id];
        if (!col_done[cell.col]) {
          v[cell.col] = cost(cell.row, cell.col) - u[cell.row];
          col_done[cell.col] = 1;
          queue.push_back(k + cell.col);
        }
      }
    } else {
      const int col = node - k;
      for (int id : basis.by_col[col]) {
        const auto& cell = basis.cells[id];
        if (!row_done[cell.row]) {
          u[cell.row] = cost(cell.row, cell.col) - v[cell.col];
          row_done[cell.row] = 1;
          queue.push_back(cell.row);
        }
      }
    }
  }
}

// Unique tree path from `row` to column `col`, returned as basis cell ids in
// order starting at the cell incident to `row`.
std::vector<int> tree_path(const Basis& basis, int k, int n, int row, int col) {
  const int start = row;
  const int goal = k + col;
  std::vector<int> parent_edge(static_cast<size_t>(k + n), -1);
  std::vector<int> parent_node(static_cast<size_t>(k + n), -1);
  std::vector<char> seen(static_cast<size_t>(k + n), 0);
  std::deque<int> queue;
  seen[start] = 1;
  queue.push_back(start);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    if (node == goal) break;
    const auto& incident = node < k ? basis.by_row[node] : basis.by_col[node - k];
    for (int id : incident) {
      const auto& cell = basis.cells[id];
      const int next = node < k ? k + cell.col : cell.row;
      if (!seen[next]) {
        seen[next] = 1;
        parent_edge[next] = id;
        parent_node[next] = node;
        queue.push_back(next);
      }
    }
  }
  std::vector<int> path;
  for (int node = goal; node != start; node = parent_node[node]) {
    path.push_back(parent_edge[node]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

TransportPlan solve_exact(const OtProblem& problem) {
  validate_problem(problem);
  const auto& cost = problem.cost;
  const int k = static_cast<int>(cost.rows());
  const int n = static_cast<int>(cost.cols());
  if (static_cast<Index>(k) * n > kExactCellGuard) {
    throw std::invalid_argument("instance exceeds the exact-solver guard of " +
                                std::to_string(kExactCellGuard) + " cells");
  }
  const Vector& p = problem.p.values();
  const Vector& q = problem.q.values();

  Basis basis = northwest_corner(p, q, Basis(k, n));
  Vector u(k), v(n);
  std::vector<char> is_basic(static_cast<size_t>(k) * n, 0);

  for (int pivot = 0; pivot < kMaxPivots; ++pivot) {
    solve_duals(basis, cost, u, v);

    std::fill(is_basic.begin(), is_basic.end(), 0);
    for (const auto& cell : basis.cells) {
      is_basic[static_cast<size_t>(cell.row) * n + cell.col] = 1;
    }

    // Entering arc: most negative reduced cost, ties to the lexicographically
    // smallest cell.
    int enter_row = -1, enter_col = -1;
    double most_negative = -kReducedCostTol;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < n; ++j) {
        if (is_basic[static_cast<size_t>(i) * n + j]) continue;
        const double reduced = cost(i, j) - u[i] - v[j];
        if (reduced < most_negative) {
          most_negative = reduced;
          enter_row = i;
          enter_col = j;
        }
      }
    }
    if (enter_row < 0) break;  // optimal

    // The entering arc closes a unique cycle with the tree path from its
    // row to its column; allocations alternate -, +, ... along that path.
    const std::vector<int> path = tree_path(basis, k, n, enter_row, enter_col);
    double theta = std::numeric_limits<double>::infinity();
    int leaving = -1;
    for (size_t t = 0; t < path.size(); t += 2) {
      const auto& cell = basis.cells[path[t]];
      if (cell.alloc < theta ||
          (cell.alloc == theta &&
           (cell.row < basis.cells[leaving].row ||
            (cell.row == basis.cells[leaving].row &&
             cell.col < basis.cells[leaving].col)))) {
        theta = cell.alloc;
        leaving = path[t];
      }
    }
    for (size_t t = 0; t < path.size(); ++t) {
      basis.cells[path[t]].alloc += (t % 2 == 0) ? -theta : theta;
    }
    basis.cells[leaving].alloc = 0.0;
    basis.remove(leaving);
    basis.add(enter_row, enter_col, theta);

    if (pivot == kMaxPivots - 1) {
      throw std::runtime_error("transportation simplex failed to terminate");
    }
  }

  TransportPlan plan;
  plan.entries = RowMatrix::Zero(k, n);
  for (const auto& cell : basis.cells) {
    plan.entries(cell.row, cell.col) = cell.alloc;
  }
  plan.row_index.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) plan.row_index[static_cast<size_t>(i)] = i;
  plan.column_sums = q;
  return plan;
}

namespace {

double marginal_violation_l1(const RowMatrix& plan, const Vector& p, const Vector& q) {
  const Vector row_sums = plan.rowwise().sum();
  const Vector col_sums = plan.colwise().sum();
  return (row_sums - p).cwiseAbs().sum() + (col_sums - q).cwiseAbs().sum();
}

// log(sum_t exp(values_t)) with the usual max shift; -inf stays -inf.
double log_sum_exp(const Vector& values) {
  const double top = values.maxCoeff();
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (Index t = 0; t < values.size(); ++t) acc += std::exp(values[t] - top);
  return top + std::log(acc);
}

}  // namespace

SinkhornResult solve_sinkhorn(const OtProblem& problem, const SinkhornConfig& config) {
  validate_problem(problem);
  if (config.max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (config.tol <= 0.0) throw std::invalid_argument("tol must be positive");

  const auto& cost = problem.cost;
  const Index k = cost.rows();
  const Index n = cost.cols();
  const Vector& p = problem.p.values();
  const Vector& q = problem.q.values();

  const double max_cost = cost.maxCoeff();
  double reg = config.reg;
  if (reg <= 0.0) reg = max_cost > 0.0 ? 0.1 * max_cost : 1.0;

  bool log_domain = config.log_domain == LogDomainMode::kAlways;
  if (config.log_domain == LogDomainMode::kAuto && max_cost > 0.0 &&
      reg / max_cost < 0.05) {
    log_domain = true;  // stabilization mandatory for small reg
  }

  RowMatrix plan(k, n);
  int iterations = 0;
  bool converged = false;
  double violation = std::numeric_limits<double>::infinity();

  if (!log_domain) {
    const RowMatrix kernel = (-cost.array() / reg).exp();
    if ((kernel.rowwise().sum().array() <= 0.0).any() ||
        (kernel.colwise().sum().array() <= 0.0).any()) {
      throw std::runtime_error(
          "entropic kernel underflowed: regularization too small for the cost "
          "range, increase reg");
    }
    Vector u = Vector::Ones(k);
    Vector v = Vector::Ones(n);
    for (int it = 1; it <= config.max_iters; ++it) {
      v = q.cwiseQuotient(kernel.transpose() * u);
      u = p.cwiseQuotient(kernel * v);
      if (!u.allFinite() || !v.allFinite()) {
        throw std::runtime_error(
            "scaling overflowed: regularization too small for the cost range, "
            "increase reg");
      }
      iterations = it;
      if (it % 10 == 0 || it == config.max_iters) {
        plan = u.asDiagonal() * kernel * v.asDiagonal();
        violation = marginal_violation_l1(plan, p, q);
        if (violation < config.tol) {
          converged = true;
          break;
        }
      }
    }
  } else {
    // Potentials f, g with plan = exp((f_i + g_j - C_ij) / reg). Zero-mass
    // marginals give -inf potentials and exact zero rows/columns.
    const double neg_inf = -std::numeric_limits<double>::infinity();
    Vector f = Vector::Zero(k);
    Vector g = Vector::Zero(n);
    Vector log_p(k), log_q(n);
    for (Index i = 0; i < k; ++i) log_p[i] = p[i] > 0.0 ? std::log(p[i]) : neg_inf;
    for (Index j = 0; j < n; ++j) log_q[j] = q[j] > 0.0 ? std::log(q[j]) : neg_inf;

    Vector scratch_k(k), scratch_n(n);
    for (int it = 1; it <= config.max_iters; ++it) {
      for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < k; ++i) scratch_k[i] = (f[i] - cost(i, j)) / reg;
        g[j] = reg * (log_q[j] - log_sum_exp(scratch_k));
      }
      for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < n; ++j) scratch_n[j] = (g[j] - cost(i, j)) / reg;
        f[i] = reg * (log_p[i] - log_sum_exp(scratch_n));
      }
      iterations = it;
      if (it % 10 == 0 || it == config.max_iters) {
        for (Index i = 0; i < k; ++i) {
          for (Index j = 0; j < n; ++j) {
            plan(i, j) = std::exp((f[i] + g[j] - cost(i, j)) / reg);
          }
        }
        violation = marginal_violation_l1(plan, p, q);
        if (violation < config.tol) {
          converged = true;
          break;
        }
      }
    }
  }

  SinkhornResult result;
  result.plan.entries = std::move(plan);
  result.plan.row_index.resize(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i) result.plan.row_index[static_cast<size_t>(i)] = static_cast<int>(i);
  result.plan.column_sums = q;
  result.objective = (result.plan.entries.array() * cost.array()).sum();
  result.marginal_violation = violation;
  result.iterations = iterations;
  result.converged = converged;
  result.reg = reg;
  return result;
}

std::vector<std::optional<Vector>> barycentric_map(const TransportPlan& plan,
                                                   const Dataset& target) {
  if (plan.cols() != target.size()) {
    throw std::invalid_argument("plan columns do not match the target size");
  }
  std::vector<std::optional<Vector>> images;
  images.reserve(static_cast<size_t>(plan.rows()));
  for (Index r = 0; r < plan.rows(); ++r) {
    const double mass = plan.entries.row(r).sum();
    if (mass <= 0.0) {
      images.emplace_back(std::nullopt);
      continue;
    }
    Vector image = (plan.entries.row(r) * target.points).transpose() / mass;
    images.emplace_back(std::move(image));
  }
  return images;
}

}  // namespace spot
