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

#include "soda/embeddings.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "soda/text.hpp"

namespace soda {

void EmbeddingTable::add(std::string word, const Vector& v) {
  if (v.size() != dim_) throw EmbeddingError("vector for '" + word + "' has dimension " + std::to_string(v.size()));
  const float norm = v.norm();
  if (norm == 0.0f) throw EmbeddingError("zero vector for '" + word + "'");
  vectors_.insert_or_assign(std::move(word), v / norm);
}

const EmbeddingTable::Vector* EmbeddingTable::find(std::string_view word) const {
  const auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingTable read_word2vec(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw EmbeddingError("empty embedding file");
  std::istringstream header(line);
  long count = 0;
  int dim = 0;
  if (!(header >> count >> dim) || count < 0 || dim <= 0) throw EmbeddingError("bad word2vec header '" + line + "'");

  EmbeddingTable table(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    EmbeddingTable::Vector v(dim);
    for (int i = 0; i < dim; ++i) {
      if (!(row >> v(i))) throw EmbeddingError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) + " components");
    }
    table.add(text::to_lower(word), v);
  }
  if (table.size() != static_cast<std::size_t>(count))
    throw EmbeddingError("header announces " + std::to_string(count) + " words, found " + std::to_string(table.size()));
  return table;
}

EmbeddingTable load_word2vec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EmbeddingError("cannot read " + path.string());
  return read_word2vec(in);
}

namespace {

std::optional<EmbeddingTable::Vector> mean_vector(std::string_view s, const EmbeddingTable& emb) {
  EmbeddingTable::Vector sum = EmbeddingTable::Vector::Zero(emb.dimension());
  int n = 0;
  for (const auto& w : text::split_words(text::to_lower(s))) {
    if (text::is_stopword(w)) continue;
    const auto* v = emb.find(w);
    if (!v) return std::nullopt;
    sum += *v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<float>(n);
}

}  // namespace

std::optional<double> semantic_similarity(std::string_view a, std::string_view b, const EmbeddingTable& emb) {
  if (emb.empty()) return std::nullopt;
  const auto va = mean_vector(a, emb);
  const auto vb = mean_vector(b, emb);
  if (!va || !vb) return std::nullopt;
  const Eigen::VectorXd da = va->cast<double>();
  const Eigen::VectorXd db = vb->cast<double>();
  const double na = da.norm();
  const double nb = db.norm();
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  const double cosine = std::clamp(da.dot(db) / (na * nb), -1.0, 1.0);
  return (cosine + 1.0) / 2.0;
}

}  // namespace soda
