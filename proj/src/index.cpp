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

#include "soda/index.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "soda/text.hpp"

namespace soda {

namespace {

constexpr std::string_view kHeader = "#soda-index";
constexpr std::string_view kVersion = "v1";

bool is_meta_class(std::string_view iri) {
  return iri == vocab::kOwlClass || iri == vocab::kRdfsClass || iri == vocab::kRdfProperty ||
         iri == vocab::kOwlObjectProperty || iri == vocab::kOwlDatatypeProperty;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Classifies every IRI subject as class, property or instance.
struct Roles {
  std::set<std::string> classes;
  std::set<std::string> properties;
};

Roles classify(const TripleSet& store) {
  Roles r;
  for (const auto& t : store.triples()) {
    if (t.predicate.value == vocab::kRdfType && t.object.is_iri()) {
      const std::string& o = t.object.value;
      if (!vocab::is_builtin(o)) r.classes.insert(o);
      if (t.subject.is_iri() && !vocab::is_builtin(t.subject.value)) {
        if (o == vocab::kOwlClass || o == vocab::kRdfsClass) r.classes.insert(t.subject.value);
        if (o == vocab::kRdfProperty || o == vocab::kOwlObjectProperty || o == vocab::kOwlDatatypeProperty)
          r.properties.insert(t.subject.value);
      }
    }
    if (!vocab::is_builtin(t.predicate.value)) r.properties.insert(t.predicate.value);
  }
  return r;
}

}  // namespace

std::string IndexConfig::canonical() const {
  std::ostringstream out;
  out << "index.properties=";
  if (properties.empty()) {
    out << "*";
  } else {
    out << text::join(properties, ",");
  }
  out << "\nindex.uri_fragments=" << (uri_fragments ? "true" : "false") << "\nindex.max_ngram=" << max_ngram
      << "\nindex.max_literal_words=" << max_literal_words << "\npagerank.damping=" << text::format_fixed6(pagerank.damping)
      << "\npagerank.tol=" << pagerank.tol << "\npagerank.max_iter=" << pagerank.max_iter << "\n";
  return out.str();
}

std::string IndexConfig::digest() const { return text::fnv1a_hex(canonical()); }

bool entry_before(const IndexEntry& a, const IndexEntry& b) {
  if (a.pagerank != b.pagerank) return a.pagerank > b.pagerank;
  if (a.uri != b.uri) return a.uri < b.uri;
  return a.property < b.property;
}

std::vector<IndexEntry> InvertedIndex::lookup(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  return it->second;
}

std::vector<std::string> InvertedIndex::fuzzy_keys(std::string_view word, std::size_t max_distance) const {
  std::vector<std::string> out;
  if (word.empty()) return out;
  const std::string first(1, word[0]);
  for (auto it = entries_.lower_bound(first); it != entries_.end() && it->first.starts_with(first); ++it) {
    const std::string& key = it->first;
    if (key.find(' ') != std::string::npos) continue;
    const std::size_t len_gap = key.size() > word.size() ? key.size() - word.size() : word.size() - key.size();
    if (len_gap > max_distance) continue;
    if (text::levenshtein(key, word) <= max_distance) out.push_back(key);
  }
  return out;
}

std::optional<double> InvertedIndex::pagerank_of(std::string_view uri) const {
  const auto it = uri_pagerank_.find(std::string(uri));
  if (it == uri_pagerank_.end()) return std::nullopt;
  return it->second;
}

std::size_t InvertedIndex::size() const {
  std::size_t n = 0;
  for (const auto& [k, v] : entries_) n += v.size();
  return n;
}

void InvertedIndex::add(IndexEntry e) {
  auto& bucket = entries_[e.key];
  for (auto& existing : bucket) {
    if (existing.uri == e.uri && existing.property == e.property) {
      if (e.value.size() < existing.value.size() ||
          (e.value.size() == existing.value.size() && e.value < existing.value))
        existing = std::move(e);
      return;
    }
  }
  bucket.push_back(std::move(e));
}

void InvertedIndex::finalize() {
  meta.max_pagerank = 0.0;
  uri_pagerank_.clear();
  for (auto& [key, bucket] : entries_) {
    std::sort(bucket.begin(), bucket.end(), entry_before);
    for (const auto& e : bucket) {
      meta.max_pagerank = std::max(meta.max_pagerank, e.pagerank);
      uri_pagerank_[e.uri] = e.pagerank;
    }
  }
}

InvertedIndex build_inverted_index(const TripleSet& store, const PageRankScores& pagerank,
                                   const IndexConfig& config, IndexDiagnostics* diagnostics) {
  InvertedIndex index;
  index.meta.dataset_id = store.digest();
  index.meta.config_digest = config.digest();

  IndexDiagnostics diag;
  const Roles roles = classify(store);
  const std::set<std::string> wanted(config.properties.begin(), config.properties.end());
  std::set<std::string> untyped;
  std::set<std::pair<std::string, std::string>> keyed;  // (key, uri) pairs produced from literals

  const std::size_t max_ngram = static_cast<std::size_t>(std::max(1, config.max_ngram));
  for (const auto& t : store.triples()) {
    if (!t.object.is_string_literal() || !t.subject.is_iri()) continue;
    if (!wanted.empty() && !wanted.contains(t.predicate.value)) continue;
    const std::string& uri = t.subject.value;

    std::string cls;
    if (roles.classes.contains(uri)) {
      cls = vocab::kOwlClass;
    } else if (roles.properties.contains(uri)) {
      cls = vocab::kRdfProperty;
    } else {
      std::vector<std::string> types;
      for (auto& ty : store.types_of(t.subject))
        if (!is_meta_class(ty)) types.push_back(std::move(ty));
      if (types.empty()) {
        untyped.insert(uri);
        continue;
      }
      cls = types.front();
    }

    if (config.max_literal_words > 0 &&
        text::split_words(t.object.value).size() > static_cast<std::size_t>(config.max_literal_words)) {
      ++diag.long_literals;
      continue;
    }
    const std::vector<std::string> words = text::normalize_words(t.object.value);
    const std::string value = text::clean(t.object.value);
    const double pr = text::round6(pagerank.normalized(uri));
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t n = 1; n <= max_ngram && i + n <= words.size(); ++n) {
        std::vector<std::string> gram(words.begin() + static_cast<std::ptrdiff_t>(i),
                                      words.begin() + static_cast<std::ptrdiff_t>(i + n));
        std::string key = text::join(gram, " ");
        keyed.emplace(key, uri);
        index.add({std::move(key), uri, cls, t.predicate.value, pr, value});
      }
    }
  }

  if (config.uri_fragments) {
    auto add_fragment = [&](const std::string& uri, std::string_view cls) {
      const std::vector<std::string> words = text::tokenize_uri_fragment(uri);
      std::vector<std::string> stems;
      for (const auto& w : words)
        if (!text::is_stopword(w)) stems.push_back(text::porter_stem(w));
      if (stems.empty()) return;
      std::string key = text::join(stems, " ");
      if (keyed.contains({key, uri})) return;
      index.add({std::move(key), uri, std::string(cls), std::string(kUriMatch),
                 text::round6(pagerank.normalized(uri)), text::join(words, " ")});
    };
    for (const auto& c : roles.classes) add_fragment(c, vocab::kOwlClass);
    for (const auto& p : roles.properties)
      if (!roles.classes.contains(p)) add_fragment(p, vocab::kRdfProperty);
  }

  diag.untyped.assign(untyped.begin(), untyped.end());
  if (diagnostics) *diagnostics = std::move(diag);
  index.finalize();
  return index;
}

std::string serialize_index(const InvertedIndex& index) {
  std::string body;
  body += "#meta\tbuilt=" + std::to_string(index.meta.build_timestamp) +
          "\tmax_pagerank=" + text::format_fixed6(index.meta.max_pagerank) +
          "\tentries=" + std::to_string(index.size()) + "\n";
  for (const auto& [key, bucket] : index.entries()) {
    for (const auto& e : bucket) {
      body += e.key + '\t' + e.uri + '\t' + e.cls + '\t' + e.property + '\t' + text::format_fixed6(e.pagerank) + '\n';
      body += "#v\t" + e.value + '\n';
    }
  }
  std::string out = std::string(kHeader) + " " + std::string(kVersion) + " " + index.meta.dataset_id + " " +
                    index.meta.config_digest + "\n";
  out += body;
  out += "#end\t" + text::fnv1a_hex(body) + "\n";
  return out;
}

InvertedIndex parse_index(std::string_view text_in) {
  InvertedIndex index;
  std::istringstream in{std::string(text_in)};
  std::string line;
  if (!std::getline(in, line)) throw LoadError("empty index file");
  {
    std::istringstream header(line);
    std::string magic, version;
    header >> magic >> version >> index.meta.dataset_id >> index.meta.config_digest;
    if (magic != kHeader) throw LoadError("not an index file");
    if (version != kVersion) throw LoadError("index version mismatch: expected " + std::string(kVersion) + ", got " + version);
    if (index.meta.dataset_id.empty() || index.meta.config_digest.empty()) throw LoadError("incomplete index header");
  }

  std::string body;
  bool ended = false;
  std::size_t declared = 0;
  std::size_t line_no = 1;
  IndexEntry* last = nullptr;
  std::vector<IndexEntry> entries;
  double declared_max = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (ended) throw LoadError("content after end marker at line " + std::to_string(line_no));
    if (line.starts_with("#end\t")) {
      if (line.substr(5) != text::fnv1a_hex(body)) throw LoadError("index digest mismatch");
      ended = true;
      continue;
    }
    body += line;
    body += '\n';
    if (line.starts_with("#meta\t")) {
      for (const auto& field : split_tabs(line.substr(6))) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw LoadError("bad metadata field '" + field + "'");
        const std::string k = field.substr(0, eq);
        const std::string v = field.substr(eq + 1);
        if (k == "built") index.meta.build_timestamp = std::stoll(v);
        if (k == "max_pagerank") declared_max = std::stod(v);
        if (k == "entries") declared = std::stoull(v);
      }
      continue;
    }
    if (line.starts_with("#v\t")) {
      if (!last) throw LoadError("value line without entry at line " + std::to_string(line_no));
      last->value = line.substr(3);
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 5) throw LoadError("malformed entry at line " + std::to_string(line_no));
    IndexEntry e{cols[0], cols[1], cols[2], cols[3], 0.0, {}};
    try {
      e.pagerank = std::stod(cols[4]);
    } catch (const std::exception&) {
      throw LoadError("bad pagerank at line " + std::to_string(line_no));
    }
    entries.push_back(std::move(e));
    last = &entries.back();
  }
  if (!ended) throw LoadError("truncated index file (missing end marker)");
  if (entries.size() != declared) throw LoadError("entry count mismatch");
  for (auto& e : entries) index.add(std::move(e));
  index.finalize();
  if (index.meta.max_pagerank != declared_max) throw LoadError("max pagerank mismatch");
  return index;
}

void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_index(index);
  if (!out) throw Error("write failed for " + path.string());
}

InvertedIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_index(buf.str());
}

}  // namespace soda
