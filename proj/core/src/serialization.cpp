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

#include "spot/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spot {

namespace {

using nlohmann::json;

json plan_to_coordinate_json(const TransportPlan& plan) {
  json rows = json::array();
  json cols = json::array();
  json values = json::array();
  for (Index r = 0; r < plan.rows(); ++r) {
    for (Index c = 0; c < plan.cols(); ++c) {
      const double v = plan.entries(r, c);
      if (v != 0.0) {
        rows.push_back(r);
        cols.push_back(c);
        values.push_back(v);
      }
    }
  }
  return json{{"row", rows}, {"col", cols}, {"value", values}};
}

json trace_to_json(const SelectionTrace& trace) {
  json out = json::array();
  for (const auto& entry : trace.per_iteration) {
    out.push_back(json{{"iteration", entry.iteration},
                       {"added_indices", entry.added},
                       {"objective", entry.objective},
                       {"gain", entry.gain}});
  }
  return out;
}

std::string format_csv_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string to_json(const PrototypeSet& set, bool include_plan,
                    const SelectionTrace* trace) {
  json out;
  out["indices"] = set.indices;
  out["weights"] = std::vector<double>(set.weights.data(),
                                       set.weights.data() + set.weights.size());
  out["objective"] = set.objective;
  if (include_plan && set.plan) out["plan"] = plan_to_coordinate_json(*set.plan);
  if (trace) out["trace"] = trace_to_json(*trace);
  return out.dump(2);
}

PrototypeSet prototype_set_from_json(const std::string& text) {
  const json in = json::parse(text);
  PrototypeSet set;
  set.indices = in.at("indices").get<std::vector<int>>();
  const auto weights = in.at("weights").get<std::vector<double>>();
  set.weights = Eigen::Map<const Vector>(weights.data(),
                                         static_cast<Index>(weights.size()));
  set.objective = in.at("objective").get<double>();
  if (in.contains("plan")) {
    const auto& plan_json = in.at("plan");
    const auto rows = plan_json.at("row").get<std::vector<Index>>();
    const auto cols = plan_json.at("col").get<std::vector<Index>>();
    const auto values = plan_json.at("value").get<std::vector<double>>();
    if (rows.size() != cols.size() || rows.size() != values.size()) {
      throw std::runtime_error("plan coordinate arrays differ in length");
    }
    Index max_col = -1;
    for (Index c : cols) max_col = std::max(max_col, c);
    TransportPlan plan;
    plan.entries = RowMatrix::Zero(static_cast<Index>(set.indices.size()), max_col + 1);
    for (size_t t = 0; t < rows.size(); ++t) {
      plan.entries(rows[t], cols[t]) = values[t];
    }
    plan.row_index = set.indices;
    plan.column_sums = plan.entries.colwise().sum();
    set.plan = std::move(plan);
  }
  return set;
}

std::string to_json(const SelectionTrace& trace) { return trace_to_json(trace).dump(2); }

std::string to_json(const MmdSelection& selection) {
  json out;
  out["indices"] = selection.indices;
  out["weights"] = std::vector<double>(
      selection.weights.data(), selection.weights.data() + selection.weights.size());
  out["score"] = selection.score;
  return out.dump(2);
}

MmdSelection mmd_selection_from_json(const std::string& text) {
  const json in = json::parse(text);
  MmdSelection selection;
  selection.indices = in.at("indices").get<std::vector<int>>();
  const auto weights = in.at("weights").get<std::vector<double>>();
  selection.weights = Eigen::Map<const Vector>(weights.data(),
                                               static_cast<Index>(weights.size()));
  selection.score = in.at("score").get<double>();
  return selection;
}

std::string to_json(const TransportPlan& plan, const PlanMetadata& meta) {
  json out = plan_to_coordinate_json(plan);
  out["metadata"] = json{{"objective", meta.objective},
                         {"marginal_violation", meta.marginal_violation},
                         {"solver", meta.solver},
                         {"reg", meta.reg}};
  return out.dump(2);
}

std::string to_json(std::span<const Criticism> criticisms) {
  json out = json::array();
  for (const auto& c : criticisms) {
    out.push_back(json{{"index", c.index}, {"witness", c.witness}});
  }
  return out.dump(2);
}

std::vector<Criticism> criticisms_from_json(const std::string& text) {
  const json in = json::parse(text);
  std::vector<Criticism> out;
  for (const auto& item : in) {
    out.push_back({item.at("index").get<int>(), item.at("witness").get<double>()});
  }
  return out;
}

std::string criticisms_csv(std::span<const Criticism> criticisms) {
  std::string out = "index,witness\n";
  for (const auto& c : criticisms) {
    out += std::to_string(c.index) + "," + format_csv_double(c.witness) + "\n";
  }
  return out;
}

std::string to_json(std::span<const ExperimentResult> results) {
  json out = json::array();
  for (const auto& result : results) {
    json curve = json::array();
    for (const auto& point : result.curve) {
      curve.push_back(json{{"k", point.k},
                           {"acc_mean", point.acc_mean},
                           {"acc_std", point.acc_std},
                           {"objective", point.objective}});
    }
    out.push_back(json{{"method", result.method},
                       {"runs", result.runs},
                       {"curve", curve},
                       {"wall_time_s", result.wall_time_s}});
  }
  return out.dump(2);
}

std::vector<ExperimentResult> experiment_results_from_json(const std::string& text) {
  const json in = json::parse(text);
  std::vector<ExperimentResult> results;
  for (const auto& item : in) {
    ExperimentResult result;
    result.method = item.at("method").get<std::string>();
    result.runs = item.at("runs").get<int>();
    result.wall_time_s = item.at("wall_time_s").get<double>();
    for (const auto& point : item.at("curve")) {
      result.curve.push_back({point.at("k").get<int>(),
                              point.at("acc_mean").get<double>(),
                              point.at("acc_std").get<double>(),
                              point.at("objective").get<double>()});
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::string experiment_csv(std::span<const ExperimentResult> results) {
  std::string out = "method,k,acc_mean,acc_std,objective\n";
  for (const auto& result : results) {
    for (const auto& point : result.curve) {
      out += result.method + "," + std::to_string(point.k) + "," +
             format_csv_double(point.acc_mean) + "," +
             format_csv_double(point.acc_std) + "," +
             format_csv_double(point.objective) + "\n";
    }
  }
  return out;
}

std::vector<ExperimentResult> experiment_results_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty curve table");
  std::vector<ExperimentResult> results;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) throw std::runtime_error("malformed curve row: " + line);
    const std::string& method = fields[0];
    if (results.empty() || results.back().method != method) {
      results.push_back(ExperimentResult{method, 0, {}, 0.0});
    }
    results.back().curve.push_back({std::stoi(fields[1]), std::stod(fields[2]),
                                    std::stod(fields[3]), std::stod(fields[4])});
  }
  return results;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace spot
