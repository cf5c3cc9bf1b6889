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

#include "soda/matcher.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "soda/text.hpp"

namespace soda {

std::string_view to_string(MatchKind k) {
  switch (k) {
    case MatchKind::InstanceGroup: return "instance";
    case MatchKind::ClassMatch: return "class";
    case MatchKind::PropertyMatch: return "property";
    case MatchKind::Rule: return "rule";
  }
  return "unknown";
}

std::string CandidateMatch::key() const {
  std::string k = std::string(to_string(kind)) + "|" + cls + "|" + property + "|" + text::join(uris, ",");
  if (rule) k += "|" + rule->name;
  return k;
}

bool candidate_before(const CandidateMatch& a, const CandidateMatch& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.cls != b.cls) return a.cls < b.cls;
  if (a.property != b.property) return a.property < b.property;
  return a.uris < b.uris;
}

Tokenization extract_tokens(std::string_view question, const InvertedIndex& index, const RuleSet& rules,
                            const MatcherConfig& config) {
  Tokenization out;
  const std::vector<std::string> words = text::split_words(question);
  std::vector<std::size_t> content;
  std::vector<std::string> stems(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string lower = text::to_lower(words[i]);
    if (text::is_stopword(lower)) continue;
    stems[i] = text::porter_stem(lower);
    content.push_back(i);
  }

  auto surface = [&](std::size_t first, std::size_t last) {
    std::vector<std::string> span(words.begin() + static_cast<std::ptrdiff_t>(first),
                                  words.begin() + static_cast<std::ptrdiff_t>(last + 1));
    return text::join(span, " ");
  };

  const std::size_t max_n = static_cast<std::size_t>(std::max(1, config.max_ngram));
  std::size_t j = 0;
  while (j < content.size()) {
    bool hit = false;
    for (std::size_t n = std::min(max_n, content.size() - j); n >= 1 && !hit; --n) {
      std::vector<std::string> window;
      for (std::size_t k = j; k < j + n; ++k) window.push_back(stems[content[k]]);
      std::string key = text::join(window, " ");
      if (!index.contains(key) && !find_rule(rules, key)) continue;
      const std::size_t first = content[j];
      const std::size_t last = content[j + n - 1];
      out.tokens.push_back({surface(first, last), key, first, last + 1, {key}, false});
      j += n;
      hit = true;
    }
    if (hit) continue;
    const std::size_t w = content[j];
    if (config.fuzzy) {
      auto keys = index.fuzzy_keys(stems[w], 1);
      if (!keys.empty()) {
        out.tokens.push_back({words[w], stems[w], w, w + 1, std::move(keys), true});
        ++j;
        continue;
      }
    }
    out.skipped.push_back(words[w]);
    ++j;
  }
  return out;
}

namespace {

struct Group {
  MatchKind kind;
  std::string cls;
  std::string property;
  std::set<std::string> uris;
  std::set<std::string> values;
  double string_sim = -1.0;
  std::optional<double> semantic_sim;
  double pagerank = 0.0;
};

MatchKind kind_of(const IndexEntry& e) {
  if (e.cls == vocab::kOwlClass) return MatchKind::ClassMatch;
  if (e.cls == vocab::kRdfProperty) return MatchKind::PropertyMatch;
  return MatchKind::InstanceGroup;
}

}  // namespace

std::vector<CandidateMatch> rank_candidates(const Token& token, const std::vector<IndexEntry>& entries,
                                            const EmbeddingTable* emb, const MatcherConfig& config,
                                            double max_pagerank) {
  std::map<std::string, Group> groups;
  for (const auto& e : entries) {
    const MatchKind kind = kind_of(e);
    const std::string gkey = kind == MatchKind::InstanceGroup ? "I\t" + e.cls + "\t" + e.property
                                                              : std::string(to_string(kind)) + "\t" + e.uri;
    auto [it, fresh] = groups.try_emplace(gkey);
    Group& g = it->second;
    if (fresh) {
      g.kind = kind;
      g.cls = e.cls;
      g.property = e.property;
    }
    const double sim = text::string_similarity(token.normalized, text::normalize(e.value));
    // Metadata matches keep the property column of their best-matching member.
    if (kind != MatchKind::InstanceGroup && (sim > g.string_sim || (sim == g.string_sim && e.property < g.property)))
      g.property = e.property;
    g.string_sim = std::max(g.string_sim, sim);
    g.uris.insert(e.uri);
    g.values.insert(e.value);
    g.pagerank = std::max(g.pagerank, e.pagerank);
    if (emb) {
      if (const auto s = semantic_similarity(token.text, e.value, *emb))
        g.semantic_sim = g.semantic_sim ? std::max(*g.semantic_sim, *s) : *s;
    }
  }

  std::vector<CandidateMatch> out;
  for (auto& [k, g] : groups) {
    if (g.semantic_sim && *g.semantic_sim < config.semantic_threshold) continue;
    CandidateMatch m;
    m.token = token;
    m.kind = g.kind;
    m.cls = g.cls;
    m.property = g.property;
    m.uris.assign(g.uris.begin(), g.uris.end());
    m.match_values.assign(g.values.begin(), g.values.end());
    m.string_sim = g.string_sim;
    m.semantic_sim = g.semantic_sim;
    if (!config.ablation) m.pagerank_norm = max_pagerank > 0.0 ? g.pagerank / max_pagerank : 0.0;
    m.score = config.ablation ? m.string_sim : config.alpha * m.string_sim + (1.0 - config.alpha) * m.pagerank_norm;
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), candidate_before);
  if (config.top_n >= 0 && out.size() > static_cast<std::size_t>(config.top_n))
    out.resize(static_cast<std::size_t>(config.top_n));
  return out;
}

MatchResult match_question(std::string_view question, const InvertedIndex& index, const EmbeddingTable* emb,
                           const RuleSet& rules, const MatcherConfig& config) {
  MatchResult result;
  Tokenization tok = extract_tokens(question, index, rules, config);
  result.tokenization.skipped = tok.skipped;
  for (auto& token : tok.tokens) {
    if (!token.fuzzy) {
      if (auto rule = find_rule(rules, token.normalized)) {
        CandidateMatch m;
        m.token = token;
        m.kind = MatchKind::Rule;
        m.cls = rule->head.front().cls;
        m.property = rule->name;
        m.uris = {rule->head.front().cls};
        m.string_sim = 1.0;
        m.pagerank_norm = config.ablation ? 0.0 : 1.0;
        m.score = 1.0;
        m.rule = std::move(rule);
        result.tokenization.tokens.push_back(token);
        result.matrix.push_back({std::move(m)});
        continue;
      }
    }
    std::vector<IndexEntry> entries;
    for (const auto& k : token.keys) {
      auto hits = index.lookup(k);
      entries.insert(entries.end(), std::make_move_iterator(hits.begin()), std::make_move_iterator(hits.end()));
    }
    auto candidates = rank_candidates(token, entries, emb, config, index.meta.max_pagerank);
    if (candidates.empty()) {
      result.tokenization.skipped.push_back(token.text);
      continue;
    }
    result.tokenization.tokens.push_back(token);
    result.matrix.push_back(std::move(candidates));
  }
  return result;
}

}  // namespace soda
