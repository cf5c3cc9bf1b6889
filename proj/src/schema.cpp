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

#include "soda/schema.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "soda/text.hpp"

namespace soda {

namespace {

bool is_meta_type(std::string_view iri) { return vocab::is_builtin(iri); }

std::vector<std::string> instance_types(const TripleSet& store, const Atom& a) {
  std::vector<std::string> out;
  for (auto& t : store.types_of(a))
    if (!is_meta_type(t)) out.push_back(std::move(t));
  return out;
}

// Classes, properties and resources typed only with meta classes describe the
// schema itself rather than instance data.
bool is_schema_resource(const TripleSet& store, const Atom& a) {
  if (!store.by_predicate(a).empty()) return true;
  for (const std::size_t i : store.by_object(a))
    if (store.triples()[i].predicate.value == vocab::kRdfType) return true;
  const auto types = store.types_of(a);
  return !types.empty() && std::all_of(types.begin(), types.end(), [](const auto& t) { return is_meta_type(t); });
}

struct Adjacent {
  const SchemaEdge* edge;
  bool forward;
  const std::string& other() const { return forward ? edge->range : edge->domain; }
};

std::map<std::string_view, std::vector<Adjacent>> adjacency(const SchemaGraph& g) {
  std::map<std::string_view, std::vector<Adjacent>> adj;
  for (const auto& e : g.edges) {
    if (e.domain == e.range) continue;
    adj[e.domain].push_back({&e, true});
    adj[e.range].push_back({&e, false});
  }
  return adj;
}

std::map<std::string_view, int> bfs(const std::map<std::string_view, std::vector<Adjacent>>& adj,
                                    std::string_view from) {
  std::map<std::string_view, int> dist{{from, 0}};
  std::deque<std::string_view> queue{from};
  while (!queue.empty()) {
    const std::string_view c = queue.front();
    queue.pop_front();
    const auto it = adj.find(c);
    if (it == adj.end()) continue;
    for (const auto& a : it->second) {
      if (dist.emplace(a.other(), dist[c] + 1).second) queue.push_back(a.other());
    }
  }
  return dist;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool path_less(const SchemaPath& a, const SchemaPath& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].property != b[i].property) return a[i].property < b[i].property;
  }
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

SchemaGraph extract_schema_graph(const TripleSet& store, SchemaDiagnostics* diagnostics) {
  SchemaGraph g;
  g.dataset_id = store.digest();
  SchemaDiagnostics diag;
  std::set<std::string> untyped;

  for (const auto& t : store.triples()) {
    if (t.predicate.value == vocab::kRdfType) {
      if (t.object.is_iri() && !is_meta_type(t.object.value)) g.classes.insert(t.object.value);
      continue;
    }
    if (is_schema_resource(store, t.subject)) continue;
    const auto subject_types = instance_types(store, t.subject);
    if (subject_types.empty()) {
      untyped.insert(t.subject.value);
      ++diag.skipped_triples;
      continue;
    }
    if (t.object.is_literal()) {
      for (const auto& c : subject_types) g.datatype_properties.emplace(c, t.predicate.value);
      continue;
    }
    if (is_schema_resource(store, t.object)) continue;
    const auto object_types = instance_types(store, t.object);
    if (object_types.empty()) {
      untyped.insert(t.object.value);
      ++diag.skipped_triples;
      continue;
    }
    for (const auto& d : subject_types)
      for (const auto& r : object_types) g.edges.insert({d, t.predicate.value, r});
  }

  diag.untyped.assign(untyped.begin(), untyped.end());
  if (diagnostics) *diagnostics = std::move(diag);
  return g;
}

int hop_distance(const SchemaGraph& g, std::string_view from, std::string_view to) {
  const auto adj = adjacency(g);
  const auto dist = bfs(adj, from);
  const auto it = dist.find(to);
  return it == dist.end() ? -1 : it->second;
}

std::vector<SchemaPath> shortest_paths(const SchemaGraph& g, std::string_view from, std::string_view to,
                                       int max_hops) {
  if (!g.classes.contains(std::string(from)) || !g.classes.contains(std::string(to))) return {};
  if (from == to) return {SchemaPath{}};
  const auto adj = adjacency(g);
  const auto dist = bfs(adj, from);
  const auto target = dist.find(to);
  if (target == dist.end() || target->second > max_hops) return {};

  // Walk backwards from `to`, one hop closer to `from` each step.
  std::vector<SchemaPath> out;
  SchemaPath reversed;
  auto walk = [&](auto&& self, std::string_view at, int d) -> void {
    if (d == 0) {
      out.emplace_back(reversed.rbegin(), reversed.rend());
      return;
    }
    for (const auto& a : adj.at(at)) {
      const std::string& prev = a.other();
      const auto pd = dist.find(prev);
      if (pd == dist.end() || pd->second != d - 1) continue;
      // Stepping from prev to at walks the edge against a.forward.
      reversed.push_back({prev, a.edge->property, std::string(at), !a.forward});
      self(self, prev, d - 1);
      reversed.pop_back();
    }
  };
  walk(walk, to, target->second);
  std::sort(out.begin(), out.end(), path_less);
  return out;
}

std::string serialize_schema(const SchemaGraph& g) {
  std::string out = "#soda-schema v1\n";
  if (!g.dataset_id.empty()) out += "#dataset\t" + g.dataset_id + "\n";
  for (const auto& c : g.classes) out += "CLASS\t" + c + "\n";
  for (const auto& e : g.edges) out += "EDGE\t" + e.domain + "\t" + e.property + "\t" + e.range + "\n";
  for (const auto& [c, p] : g.datatype_properties) out += "DATAPROP\t" + c + "\t" + p + "\n";
  out += "#end\n";
  return out;
}

SchemaGraph parse_schema(std::string_view text_in) {
  std::istringstream in{std::string(text_in)};
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#soda-schema ")) throw SchemaError("not a schema file");
  if (line != "#soda-schema v1") throw SchemaError("schema version mismatch: " + line.substr(13));
  SchemaGraph g;
  bool ended = false;
  std::size_t line_no = 1;
  auto fail = [&](const std::string& what) { throw SchemaError("line " + std::to_string(line_no) + ": " + what); };
  while (std::getline(in, line)) {
    ++line_no;
    if (ended) fail("content after end marker");
    if (line == "#end") {
      ended = true;
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols[0] == "#dataset" && cols.size() == 2) {
      g.dataset_id = cols[1];
    } else if (cols[0] == "CLASS" && cols.size() == 2) {
      g.classes.insert(cols[1]);
    } else if (cols[0] == "EDGE" && cols.size() == 4) {
      if (!g.classes.contains(cols[1]) || !g.classes.contains(cols[3])) fail("edge endpoint is not a class");
      g.edges.insert({cols[1], cols[2], cols[3]});
    } else if (cols[0] == "DATAPROP" && cols.size() == 3) {
      if (!g.classes.contains(cols[1])) fail("datatype property on unknown class");
      g.datatype_properties.emplace(cols[1], cols[2]);
    } else {
      fail("malformed record");
    }
  }
  if (!ended) throw SchemaError("truncated schema file (missing end marker)");
  return g;
}

void save_schema(const SchemaGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_schema(g);
  if (!out) throw Error("write failed for " + path.string());
}

SchemaGraph load_schema(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schema(buf.str());
}

}  // namespace soda
