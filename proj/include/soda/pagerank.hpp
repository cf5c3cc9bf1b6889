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
#include <Eigen/SparseCore>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "soda/rdf.hpp"

namespace soda {

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-6;
  int max_iter = 100;
};

/// Stationary scores of the damped random walk over the IRI graph of a store.
struct PageRankScores {
  std::map<std::string, double> scores;  // raw probabilities, sum to 1
  double damping = 0.85;
  int iterations = 0;
  double residual = 0.0;

  /// Score divided by the mean score, so the average node scores 1.0.
  /// IRIs outside the graph (e.g. unreferenced properties) get the mean, 1.0.
  double normalized(const std::string& iri) const;

  std::map<std::string, double> normalized_all() const;
};

/// Damped power iteration x <- d (M x + dangling(x)/n) + (1-d)/n on a
/// column-stochastic transition matrix. Columns of dangling nodes are empty and
/// their mass is spread uniformly. Starts from the uniform vector and stops once
/// the L1 change drops below tol or after max_iter steps.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> power_iteration(const Eigen::SparseMatrix<Scalar>& transition,
                                                         const std::vector<bool>& dangling, Scalar damping,
                                                         Scalar tol, int max_iter, int* iterations = nullptr,
                                                         Scalar* residual = nullptr) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = transition.rows();
  Vector x = Vector::Constant(n, Scalar(1) / static_cast<Scalar>(n));
  Scalar change = 0;
  int it = 0;
  while (it < max_iter) {
    Scalar dangling_mass = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (dangling[static_cast<std::size_t>(i)]) dangling_mass += x(i);
    Vector next = damping * (transition * x);
    next.array() += damping * dangling_mass / static_cast<Scalar>(n) + (Scalar(1) - damping) / static_cast<Scalar>(n);
    change = (next - x).template lpNorm<1>();
    x = std::move(next);
    ++it;
    if (change < tol) break;
  }
  if (iterations) *iterations = it;
  if (residual) *residual = change;
  return x;
}

/// Nodes are all IRIs in subject or object position; every triple with IRI subject
/// and IRI object contributes one edge (literal and blank-node objects excluded).
PageRankScores compute_pagerank(const TripleSet& store, const PageRankOptions& options = {});

}  // namespace soda
