// Copyright 2026 The SODA Authors.
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

#include <Eigen/Dense>

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "soda/rdf.hpp"

namespace soda {

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

/// Word vectors, stored unit-normalized.
class EmbeddingTable {
 public:
  using Vector = Eigen::VectorXf;

  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension) : dim_(dimension) {}

  int dimension() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }

  /// Stores v / |v|. Zero vectors and dimension mismatches are rejected.
  void add(std::string word, const Vector& v);
  const Vector* find(std::string_view word) const;

 private:
  int dim_ = 0;
  std::unordered_map<std::string, Vector> vectors_;
};

/// word2vec text format: a "count dim" header, then "word v1 ... vd" per line.
EmbeddingTable read_word2vec(std::istream& in);
EmbeddingTable load_word2vec(const std::filesystem::path& path);

/// Cosine of the mean vectors of the content words of a and b, mapped from
/// [-1, 1] to [0, 1]. Absent when either side has no content word or any
/// content word is out of vocabulary.
std::optional<double> semantic_similarity(std::string_view a, std::string_view b, const EmbeddingTable& emb);

}  // namespace soda
