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

#include "soda/query_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "soda/text.hpp"

namespace soda {

namespace {

class DisjointSets {
 public:
  std::size_t find(const std::string& v) {
    auto [it, fresh] = ids_.try_emplace(v, parent_.size());
    if (fresh) parent_.push_back(parent_.size());
    std::size_t x = it->second;
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // False when a and b were already connected.
  bool unite(const std::string& a, const std::string& b) {
    const std::size_t ra = find(a);
    const std::size_t rb = find(b);
    if (ra == rb) return false;
    parent_[std::max(ra, rb)] = std::min(ra, rb);
    return true;
  }

 private:
  std::map<std::string, std::size_t> ids_;
  std::vector<std::size_t> parent_;
};

// Acyclic, connected over the terminals plus every edge endpoint.
bool spans_as_tree(const std::vector<std::string>& terminals, const std::vector<SchemaEdge>& edges) {
  DisjointSets sets;
  for (const auto& e : edges)
    if (!sets.unite(e.domain, e.range)) return false;
  std::set<std::string> vertices(terminals.begin(), terminals.end());
  for (const auto& e : edges) {
    vertices.insert(e.domain);
    vertices.insert(e.range);
  }
  if (vertices.empty()) return true;
  const std::size_t root = sets.find(*vertices.begin());
  return std::all_of(vertices.begin(), vertices.end(), [&](const auto& v) { return sets.find(v) == root; });
}

// Kruskal over fixed-then-free edges, then repeated removal of non-terminal leaves.
std::vector<SchemaEdge> greedy_tree(const std::vector<std::string>& terminals, const std::vector<SchemaEdge>& fixed,
                                    const std::vector<SchemaEdge>& free) {
  DisjointSets sets;
  std::vector<SchemaEdge> tree;
  for (const auto* list : {&fixed, &free})
    for (const auto& e : *list)
      if (sets.unite(e.domain, e.range)) tree.push_back(e);
  const std::set<std::string> keep(terminals.begin(), terminals.end());
  const std::set<SchemaEdge> pinned(fixed.begin(), fixed.end());
  bool pruned = true;
  while (pruned) {
    pruned = false;
    std::map<std::string, int> degree;
    for (const auto& e : tree) {
      ++degree[e.domain];
      ++degree[e.range];
    }
    for (auto it = tree.begin(); it != tree.end(); ++it) {
      if (pinned.contains(*it)) continue;
      const bool loose_d = degree[it->domain] == 1 && !keep.contains(it->domain);
      const bool loose_r = degree[it->range] == 1 && !keep.contains(it->range);
      if (loose_d || loose_r) {
        tree.erase(it);
        pruned = true;
        break;
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::string edge_text(const SchemaEdge& e) { return e.domain + " " + e.property + " " + e.range; }

struct PropertyChoice {
  bool attribute = false;
  SchemaEdge edge;  // attribute: domain = class, property = property
};

QueryTarget choose_target(const std::vector<CandidateMatch>& covered, const std::map<std::size_t, PropertyChoice>& props,
                          const std::set<std::string>& anchored, const std::vector<std::string>& nodes) {
  for (std::size_t i = 0; i < covered.size(); ++i) {
    const auto& c = covered[i];
    if (c.kind == MatchKind::Rule && c.rule && c.rule->head.size() >= 2)
      return {QueryTarget::Kind::RuleVariable, c.cls, {}, c.rule->head[1].variable, i};
  }
  for (const auto& c : covered)
    if (c.kind == MatchKind::ClassMatch) return {QueryTarget::Kind::Node, c.uris.front(), {}, {}, 0};
  for (const auto& [i, choice] : props) {
    if (choice.attribute) continue;
    if (!anchored.contains(choice.edge.range)) return {QueryTarget::Kind::Node, choice.edge.range, {}, {}, 0};
    if (!anchored.contains(choice.edge.domain)) return {QueryTarget::Kind::Node, choice.edge.domain, {}, {}, 0};
    return {QueryTarget::Kind::Node, choice.edge.range, {}, {}, 0};
  }
  for (const auto& [i, choice] : props)
    if (choice.attribute) return {QueryTarget::Kind::Attribute, choice.edge.domain, choice.edge.property, {}, 0};
  for (const auto& c : covered)
    if (c.kind != MatchKind::PropertyMatch) return {QueryTarget::Kind::Node, c.anchor_class(), {}, {}, 0};
  return {QueryTarget::Kind::Node, nodes.front(), {}, {}, 0};
}

// Cartesian product of choice counts in lexicographic order, at most limit tuples.
std::vector<std::vector<std::size_t>> product(const std::vector<std::size_t>& sizes, std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) return out;
  std::vector<std::size_t> cur(sizes.size(), 0);
  while (out.size() < limit) {
    out.push_back(cur);
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (++cur[i] < sizes[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (sizes.empty()) return out;
  }
  return out;
}

}  // namespace

std::string QueryGraph::serialize() const {
  std::string out = "nodes:";
  for (const auto& n : nodes) out += " " + n;
  out += "\nedges:";
  for (const auto& e : edges) out += " [" + edge_text(e) + "]";
  out += "\nattributes:";
  for (const auto& [c, p] : attributes) out += " [" + c + " " + p + "]";
  out += "\ncover:";
  for (const auto& c : covered) out += " [" + c.token.normalized + " = " + c.key() + "]";
  out += "\ntarget: " + target.cls + " " + target.property + " " + target.variable;
  return out;
}

std::vector<std::vector<std::size_t>> enumerate_combinations(const std::vector<std::size_t>& row_sizes,
                                                             std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  if (row_sizes.empty() || limit == 0) return out;
  if (std::any_of(row_sizes.begin(), row_sizes.end(), [](std::size_t s) { return s == 0; })) return out;
  using Item = std::pair<double, std::vector<std::size_t>>;
  auto rank_product = [](const std::vector<std::size_t>& v) {
    double p = 1.0;
    for (const std::size_t r : v) p *= static_cast<double>(r + 1);
    return p;
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> start(row_sizes.size(), 0);
  frontier.emplace(1.0, start);
  seen.insert(start);
  while (!frontier.empty() && out.size() < limit) {
    auto [p, v] = frontier.top();
    frontier.pop();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] + 1 >= row_sizes[i]) continue;
      auto next = v;
      ++next[i];
      if (seen.insert(next).second) frontier.emplace(rank_product(next), next);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<SchemaEdge>> minimum_steiner_trees(const std::vector<std::string>& terminals,
                                                           const std::vector<SchemaEdge>& candidates,
                                                           const std::vector<SchemaEdge>& fixed) {
  const std::set<SchemaEdge> fixed_set(fixed.begin(), fixed.end());
  const std::vector<SchemaEdge> pinned(fixed_set.begin(), fixed_set.end());
  std::vector<SchemaEdge> free;
  for (const auto& e : std::set<SchemaEdge>(candidates.begin(), candidates.end()))
    if (!fixed_set.contains(e)) free.push_back(e);

  {
    DisjointSets sets;
    for (const auto& e : pinned)
      if (!sets.unite(e.domain, e.range)) return {};
  }

  constexpr std::size_t kExhaustiveLimit = 20;
  if (free.size() > kExhaustiveLimit) {
    auto tree = greedy_tree(terminals, pinned, free);
    if (!spans_as_tree(terminals, tree)) return {};
    return {std::move(tree)};
  }

  std::vector<std::vector<SchemaEdge>> out;
  for (std::size_t k = 0; k <= free.size() && out.empty(); ++k) {
    std::vector<bool> pick(free.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<SchemaEdge> tree = pinned;
      for (std::size_t i = 0; i < free.size(); ++i)
        if (pick[i]) tree.push_back(free[i]);
      if (spans_as_tree(terminals, tree)) {
        std::sort(tree.begin(), tree.end());
        out.push_back(std::move(tree));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QueryGraph> build_query_graphs(const MatchMatrix& matrix, const SchemaGraph& g, const BuildConfig& config) {
  if (matrix.empty()) throw BuildError("no candidate matches");
  std::vector<std::size_t> sizes;
  for (const auto& row : matrix) sizes.push_back(row.size());
  const auto combos = enumerate_combinations(sizes, static_cast<std::size_t>(std::max(0, config.max_combinations)));

  std::vector<QueryGraph> out;
  std::set<std::string> seen;
  std::set<std::string> reasons;
  const std::size_t fork_cap = static_cast<std::size_t>(std::max(1, config.max_forks));

  for (const auto& combo : combos) {
    std::vector<CandidateMatch> covered;
    for (std::size_t i = 0; i < combo.size(); ++i) covered.push_back(matrix[i][combo[i]]);

    std::set<std::string> anchored;
    std::set<std::string> instance_classes;
    std::vector<std::size_t> property_tokens;
    std::vector<std::vector<PropertyChoice>> alternatives;
    bool skip = false;
    for (std::size_t i = 0; i < covered.size() && !skip; ++i) {
      const auto& c = covered[i];
      if (c.kind == MatchKind::PropertyMatch) {
        const std::string& p = c.uris.front();
        std::vector<PropertyChoice> alts;
        bool self_loop = false;
        for (const auto& e : g.edges) {
          if (e.property != p) continue;
          if (e.domain == e.range) {
            self_loop = true;
            continue;
          }
          alts.push_back({false, e});
        }
        for (const auto& [cls, dp] : g.datatype_properties)
          if (dp == p) alts.push_back({true, {cls, dp, {}}});
        if (alts.empty()) {
          reasons.insert(self_loop ? "property <" + p + "> has the same domain and range"
                                   : "property <" + p + "> connects no typed instances");
          skip = true;
        }
        property_tokens.push_back(i);
        alternatives.push_back(std::move(alts));
        continue;
      }
      const std::string& cls = c.anchor_class();
      if (!g.classes.contains(cls)) {
        reasons.insert("class <" + cls + "> has no instances");
        skip = true;
        continue;
      }
      if (c.kind == MatchKind::InstanceGroup && !instance_classes.insert(cls).second) {
        reasons.insert("several instances of class <" + cls + "> in one question (conjunction) are not supported");
        skip = true;
        continue;
      }
      anchored.insert(cls);
    }
    if (skip) continue;

    std::vector<std::size_t> alt_sizes;
    for (const auto& a : alternatives) alt_sizes.push_back(a.size());
    for (const auto& pick : product(alt_sizes, fork_cap)) {
      std::set<std::string> terminal_set = anchored;
      std::vector<SchemaEdge> fixed;
      std::vector<std::pair<std::string, std::string>> attributes;
      std::map<std::size_t, PropertyChoice> props;
      for (std::size_t k = 0; k < pick.size(); ++k) {
        const PropertyChoice& choice = alternatives[k][pick[k]];
        props[property_tokens[k]] = choice;
        terminal_set.insert(choice.edge.domain);
        if (choice.attribute) {
          attributes.emplace_back(choice.edge.domain, choice.edge.property);
        } else {
          terminal_set.insert(choice.edge.range);
          fixed.push_back(choice.edge);
        }
      }
      std::sort(attributes.begin(), attributes.end());
      attributes.erase(std::unique(attributes.begin(), attributes.end()), attributes.end());
      const std::vector<std::string> terminals(terminal_set.begin(), terminal_set.end());

      // One path list per terminal pair; forks are the product of their choices.
      std::vector<std::vector<SchemaPath>> pair_paths;
      bool disconnected = false;
      for (std::size_t a = 0; a < terminals.size() && !disconnected; ++a) {
        for (std::size_t b = a + 1; b < terminals.size(); ++b) {
          auto paths = shortest_paths(g, terminals[a], terminals[b], config.max_path_hops);
          if (paths.empty()) {
            reasons.insert("<" + terminals[a] + "> and <" + terminals[b] + "> are not connected within " +
                           std::to_string(config.max_path_hops) + " hops");
            disconnected = true;
            break;
          }
          pair_paths.push_back(std::move(paths));
        }
      }
      if (disconnected) continue;

      std::vector<std::size_t> path_sizes;
      for (const auto& p : pair_paths) path_sizes.push_back(p.size());
      std::set<std::vector<SchemaEdge>> trees;
      for (const auto& fork : product(path_sizes, fork_cap)) {
        std::vector<SchemaEdge> pool = fixed;
        for (std::size_t k = 0; k < fork.size(); ++k)
          for (const auto& step : pair_paths[k][fork[k]]) pool.push_back(step.edge());
        for (auto& t : minimum_steiner_trees(terminals, pool, fixed)) trees.insert(std::move(t));
      }
      if (trees.empty()) reasons.insert("matched properties form a cycle");

      for (const auto& tree : trees) {
        QueryGraph qg;
        std::set<std::string> nodes(terminals.begin(), terminals.end());
        for (const auto& e : tree) {
          nodes.insert(e.domain);
          nodes.insert(e.range);
        }
        qg.nodes.assign(nodes.begin(), nodes.end());
        qg.edges = tree;
        qg.attributes = attributes;
        qg.covered = covered;
        qg.edge_count = static_cast<int>(tree.size());
        for (const auto& c : covered) qg.score_sum += c.score;
        qg.target = choose_target(covered, props, anchored, qg.nodes);
        if (seen.insert(qg.serialize()).second) out.push_back(std::move(qg));
      }
    }
  }
  if (out.empty()) {
    std::vector<std::string> list(reasons.begin(), reasons.end());
    throw BuildError("no connected interpretation" + (list.empty() ? std::string{} : ": " + text::join(list, "; ")));
  }
  return out;
}

bool graph_before(const QueryGraph& a, const QueryGraph& b, bool ablation) {
  if (ablation && a.edge_count != b.edge_count) return a.edge_count < b.edge_count;
  if (a.score_sum != b.score_sum) return a.score_sum > b.score_sum;
  if (a.edge_count != b.edge_count) return a.edge_count < b.edge_count;
  return a.serialize() < b.serialize();
}

void rank_query_graphs(std::vector<QueryGraph>& graphs, bool ablation) {
  std::stable_sort(graphs.begin(), graphs.end(),
                   [ablation](const QueryGraph& a, const QueryGraph& b) { return graph_before(a, b, ablation); });
}

std::vector<QueryGraph> build_ranked_graphs(const MatchMatrix& matrix, const SchemaGraph& g, const BuildConfig& config) {
  auto graphs = build_query_graphs(matrix, g, config);
  rank_query_graphs(graphs, config.ablation);
  if (config.max_graphs >= 0 && graphs.size() > static_cast<std::size_t>(config.max_graphs))
    graphs.resize(static_cast<std::size_t>(config.max_graphs));
  return graphs;
}

bool is_tree(const QueryGraph& graph) {
  const std::set<std::string> nodes(graph.nodes.begin(), graph.nodes.end());
  for (const auto& e : graph.edges)
    if (!nodes.contains(e.domain) || !nodes.contains(e.range)) return false;
  return spans_as_tree(graph.nodes, graph.edges) && graph.edges.size() + 1 == std::max<std::size_t>(graph.nodes.size(), 1);
}

}  // namespace soda
