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

#include <span>
#include <string>
#include <vector>

#include "spot/evaluation.hpp"
#include "spot/mmd.hpp"
#include "spot/prototype_set.hpp"
#include "spot/selectors.hpp"
#include "spot/transport.hpp"

namespace spot {

// Prototype sets: {"indices": [...], "weights": [...], "objective": x,
// "plan": {"row": [...], "col": [...], "value": [...]}} with the plan and
// trace optional.
std::string to_json(const PrototypeSet& set, bool include_plan = true,
                    const SelectionTrace* trace = nullptr);
PrototypeSet prototype_set_from_json(const std::string& text);

std::string to_json(const SelectionTrace& trace);

// Selections share the prototype-set shape with "score" in place of
// "objective".
std::string to_json(const MmdSelection& selection);
MmdSelection mmd_selection_from_json(const std::string& text);

// Plans in coordinate form plus solver metadata.
struct PlanMetadata {
  double objective = 0.0;
  double marginal_violation = 0.0;
  std::string solver;
  double reg = 0.0;
};
std::string to_json(const TransportPlan& plan, const PlanMetadata& meta);

std::string to_json(std::span<const Criticism> criticisms);
std::vector<Criticism> criticisms_from_json(const std::string& text);
std::string criticisms_csv(std::span<const Criticism> criticisms);

std::string to_json(std::span<const ExperimentResult> results);
std::vector<ExperimentResult> experiment_results_from_json(
    const std::string& text);

// Flat curve table: method,k,acc_mean,acc_std,objective.
std::string experiment_csv(std::span<const ExperimentResult> results);
std::vector<ExperimentResult> experiment_results_from_csv(
    const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace spot
