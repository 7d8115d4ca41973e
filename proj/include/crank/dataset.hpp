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

#ifndef CRANK_DATASET_HPP_
#define CRANK_DATASET_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace crank {

// n feature vectors in R^d paired with n real labels. Features are stored
// row-major. Every entry is finite; n >= 1 and d >= 1.
class Dataset {
 public:
  Dataset(std::size_t dim, std::vector<double> features,
          std::vector<double> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  double feature(std::size_t i, std::size_t f) const {
    return features_[i * dim_ + f];
  }
  double label(std::size_t i) const { return labels_[i]; }
  std::span<const double> labels() const { return labels_; }
  std::span<const double> features() const { return features_; }

  // Rows in the given order; indices may repeat.
  Dataset subset(std::span<const std::size_t> rows) const;

 private:
  std::size_t dim_;
  std::vector<double> features_;
  std::vector<double> labels_;
};

// CSV with header x0,...,x{d-1},y.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Dataset& data);

// Writes through a temporary sibling file and renames it into place, so a
// failed write never leaves a partial file at `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

}  // namespace crank

#endif  // CRANK_DATASET_HPP_
