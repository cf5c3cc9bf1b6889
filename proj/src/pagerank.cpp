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

#include "soda/pagerank.hpp"

namespace soda {

double PageRankScores::normalized(const std::string& iri) const {
  const auto it = scores.find(iri);
  if (it == scores.end() || scores.empty()) return 1.0;
  return it->second * static_cast<double>(scores.size());
}

std::map<std::string, double> PageRankScores::normalized_all() const {
  std::map<std::string, double> out;
  const auto n = static_cast<double>(scores.size());
  for (const auto& [iri, s] : scores) out.emplace(iri, s * n);
  return out;
}

PageRankScores compute_pagerank(const TripleSet& store, const PageRankOptions& options) {
  PageRankScores result;
  result.damping = options.damping;

  std::map<std::string, Eigen::Index> ids;
  for (const auto& t : store.triples()) {
    if (t.subject.is_iri()) ids.emplace(t.subject.value, 0);
    if (t.object.is_iri()) ids.emplace(t.object.value, 0);
  }
  if (ids.empty()) return result;
  Eigen::Index next = 0;
  for (auto& [iri, id] : ids) id = next++;
  const Eigen::Index n = next;

  std::vector<double> out_degree(static_cast<std::size_t>(n), 0.0);
  std::map<std::pair<Eigen::Index, Eigen::Index>, double> counts;  // (to, from) -> multiplicity
  for (const auto& t : store.triples()) {
    if (!t.subject.is_iri() || !t.object.is_iri()) continue;
    const Eigen::Index from = ids.at(t.subject.value);
    const Eigen::Index to = ids.at(t.object.value);
    out_degree[static_cast<std::size_t>(from)] += 1.0;
    counts[{to, from}] += 1.0;
  }

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(counts.size());
  for (const auto& [key, c] : counts)
    entries.emplace_back(key.first, key.second, c / out_degree[static_cast<std::size_t>(key.second)]);
  Eigen::SparseMatrix<double> transition(n, n);
  transition.setFromTriplets(entries.begin(), entries.end());

  std::vector<bool> dangling(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) dangling[static_cast<std::size_t>(i)] = out_degree[static_cast<std::size_t>(i)] == 0.0;

  const Eigen::VectorXd x = power_iteration<double>(transition, dangling, options.damping, options.tol,
                                                    options.max_iter, &result.iterations, &result.residual);
  for (const auto& [iri, id] : ids) result.scores.emplace(iri, x(id));
  return result;
}

}  // namespace soda
