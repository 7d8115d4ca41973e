/*
 * Copyright 2026 The crank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "crank/dataset.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "crank/error.hpp"

namespace crank {

Dataset::Dataset(std::size_t dim, std::vector<double> features,
                 std::vector<double> labels)
    : dim_(dim), features_(std::move(features)), labels_(std::move(labels)) {
  if (dim_ == 0) throw Error("dataset: dimension must be at least 1");
  if (labels_.empty()) throw Error("dataset: at least one row is required");
  if (features_.size() != labels_.size() * dim_) {
    throw Error(fmt::format("dataset: {} feature values for {} rows of dim {}",
                            features_.size(), labels_.size(), dim_));
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (!std::isfinite(features_[i])) {
      throw Error(fmt::format("dataset: non-finite feature at row {} column {}",
                              i / dim_, i % dim_));
    }
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!std::isfinite(labels_[i])) {
      throw Error(fmt::format("dataset: non-finite label at row {}", i));
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<double> features;
  std::vector<double> labels;
  features.reserve(rows.size() * dim_);
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= size()) throw Error("dataset: subset row out of range");
    auto x = row(r);
    features.insert(features.end(), x.begin(), x.end());
    labels.push_back(labels_[r]);
  }
  return Dataset(dim_, std::move(features), std::move(labels));
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: missing header row");
  auto header = split_commas(trim(line));
  if (header.size() < 2) {
    throw ParseError("csv: header needs at least one feature column and y");
  }
  const std::size_t dim = header.size() - 1;
  for (std::size_t f = 0; f < dim; ++f) {
    if (trim(header[f]) != fmt::format("x{}", f)) {
      throw ParseError(
          fmt::format("csv: header column {} must be named x{}", f, f));
    }
  }
  if (trim(header.back()) != "y") {
    throw ParseError("csv: last header column must be named y");
  }

  std::vector<double> features;
  std::vector<double> labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    auto text = trim(line);
    if (text.empty()) continue;
    auto cells = split_commas(text);
    if (cells.size() != dim + 1) {
      throw ParseError(fmt::format("csv: row {} has {} fields, expected {}",
                                   row, cells.size(), dim + 1));
    }
    for (std::size_t c = 0; c <= dim; ++c) {
      auto cell = trim(cells[c]);
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size() ||
          !std::isfinite(value)) {
        throw ParseError(fmt::format("csv: row {} column {}: bad number '{}'",
                                     row, c, cell));
      }
      (c < dim ? features : labels).push_back(value);
    }
  }
  if (labels.empty()) throw ParseError("csv: no data rows");
  return Dataset(dim, std::move(features), std::move(labels));
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  return read_csv(in);
}

std::string format_real(double value) { return fmt::format("{}", value); }

void write_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t f = 0; f < data.dim(); ++f) out << 'x' << f << ',';
  out << "y\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << format_real(v) << ',';
    out << format_real(data.label(i)) << '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", path));
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(fmt::format("write failed for '{}'", path));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(fmt::format("cannot rename into '{}': {}", path, ec.message()));
  }
}

}  // namespace crank
