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

#include "spot/dataset.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spot {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_real(const std::string& cell, size_t row, const std::string& column) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::runtime_error("row " + std::to_string(row) + ", column '" + column +
                             "': cannot parse '" + cell + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw std::runtime_error("row " + std::to_string(row) + ", column '" + column +
                             "': non-finite feature value");
  }
  return value;
}

}  // namespace

Dataset load_dataset(const std::string& path,
                     const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": no data rows");
  strip_cr(line);
  const std::vector<std::string> header = split_csv_line(line);
  if (header.empty()) throw std::runtime_error(path + ": empty header row");

  int label_index = -1;
  if (label_column) {
    for (size_t c = 0; c < header.size(); ++c) {
      if (header[c] == *label_column) {
        label_index = static_cast<int>(c);
        break;
      }
    }
    if (label_index < 0) {
      throw std::runtime_error(path + ": label column '" + *label_column +
                               "' not found in header");
    }
  }

  const size_t num_features = header.size() - (label_index >= 0 ? 1 : 0);
  if (num_features == 0) throw std::runtime_error(path + ": no feature columns");

  std::vector<double> values;
  std::vector<std::string> labels;
  size_t rows = 0;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error(path + ": row " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      if (static_cast<int>(c) == label_index) {
        labels.push_back(fields[c]);
      } else {
        values.push_back(parse_real(fields[c], line_no, header[c]));
      }
    }
    ++rows;
  }
  if (rows == 0) throw std::runtime_error(path + ": no data rows");

  Dataset dataset;
  dataset.points = Eigen::Map<const RowMatrix>(values.data(), static_cast<Index>(rows),
                                               static_cast<Index>(num_features));
  dataset.labels = std::move(labels);
  dataset.name = std::filesystem::path(path).stem().string();
  return dataset;
}

}  // namespace spot
