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

#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "fixtures.hpp"
#include "soda/index.hpp"
#include "soda/ntriples.hpp"
#include "soda/text.hpp"

using namespace soda;

namespace {

InvertedIndex build(const TripleSet& s, const IndexConfig& config = {}, IndexDiagnostics* d = nullptr) {
  return build_inverted_index(s, compute_pagerank(s, config.pagerank), config, d);
}

const InvertedIndex& qald_index() {
  static const InvertedIndex index = build(fx::qald_store());
  return index;
}

std::set<std::string> atoms_of(const TripleSet& s) {
  std::set<std::string> out;
  for (const auto& t : s.triples()) {
    out.insert(t.subject.value);
    out.insert(t.predicate.value);
    if (t.object.is_iri()) out.insert(t.object.value);
  }
  return out;
}

bool contiguous_in(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

TEST_SUITE("indexer") {
  TEST_CASE("stroke resolves to a side-effect instance via its name property") {
    const auto hits = qald_index().lookup("stroke");
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].uri == fx::kSider + "effect/C0038454");
    CHECK(hits[0].cls == fx::kSider + "side_effects");
    CHECK(hits[0].property == fx::kSider + "side-EffectName");
    CHECK(hits[0].pagerank > 0.0);
  }

  TEST_CASE("drug yields two class entries, drugbank first by pagerank") {
    const auto hits = qald_index().lookup("drug");
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].uri == fx::kDrugbank + "drugs");
    CHECK(hits[1].uri == fx::kSider + "drugs");
    for (const auto& h : hits) {
      CHECK(h.cls == vocab::kOwlClass);
      CHECK(h.property == vocab::kRdfsLabel);
    }
    CHECK(hits[0].pagerank > hits[1].pagerank);
  }

  TEST_CASE("possible disease target is a property entry from the URI") {
    const auto hits = qald_index().lookup(text::normalize("possible disease target"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].uri == fx::kDrugbank + "possibleDiseaseTarget");
    CHECK(hits[0].cls == vocab::kRdfProperty);
    CHECK(hits[0].property == kUriMatch);
  }

  TEST_CASE("an absent key has no entries") { CHECK(qald_index().lookup("zzzz").empty()); }

  TEST_CASE("an empty store gives an empty index with valid metadata") {
    const InvertedIndex index = build(TripleSet{});
    CHECK(index.empty());
    CHECK_FALSE(index.meta.dataset_id.empty());
    CHECK(index.meta.config_digest == IndexConfig{}.digest());
    CHECK(parse_index(serialize_index(index)) == index);
  }

  TEST_CASE("keys are lowercase, single-spaced, stopword-free and pageranks non-negative") {
    for (const auto& [key, bucket] : qald_index().entries()) {
      CHECK_FALSE(key.empty());
      CHECK(text::clean(key) == key);
      for (const auto& w : text::split_words(key)) CHECK_FALSE(text::is_stopword(w));
      for (const auto& e : bucket) {
        CHECK(e.key == key);
        CHECK(e.pagerank >= 0.0);
      }
    }
  }

  TEST_CASE("(key, uri, property) is unique and lookup is totally ordered") {
    for (const auto& [key, bucket] : qald_index().entries()) {
      std::set<std::tuple<std::string, std::string, std::string>> seen;
      for (const auto& e : bucket) CHECK(seen.emplace(e.key, e.uri, e.property).second);
      const auto hits = qald_index().lookup(key);
      for (std::size_t i = 1; i < hits.size(); ++i) {
        CHECK(entry_before(hits[i - 1], hits[i]));
        CHECK_FALSE(entry_before(hits[i], hits[i - 1]));
        CHECK((hits[i - 1].pagerank > hits[i].pagerank ||
               (hits[i - 1].pagerank == hits[i].pagerank && hits[i - 1].uri <= hits[i].uri)));
      }
    }
  }

  TEST_CASE("every entry uri exists in the store; classes exist or are the sentinels") {
    for (const TripleSet* s : {&fx::qald_store(), &fx::cordis_store()}) {
      const auto atoms = atoms_of(*s);
      const InvertedIndex index = build(*s);
      for (const auto& [key, bucket] : index.entries())
        for (const auto& e : bucket) {
          CHECK(atoms.contains(e.uri));
          const bool sentinel = e.cls == vocab::kOwlClass || e.cls == vocab::kRdfProperty;
          CHECK((sentinel || atoms.contains(e.cls)));
        }
    }
  }

  TEST_CASE("every contiguous n-gram of an indexed literal has an entry, and nothing else does") {
    const TripleSet& s = fx::qald_store();
    const InvertedIndex& index = qald_index();
    for (const auto& t : s.triples()) {
      if (!t.object.is_string_literal()) continue;
      const auto words = text::normalize_words(t.object.value);
      for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t n = 1; n <= 4 && i + n <= words.size(); ++n) {
          const std::vector<std::string> gram(words.begin() + i, words.begin() + i + n);
          const auto hits = index.lookup(text::join(gram, " "));
          const bool found = std::any_of(hits.begin(), hits.end(), [&](const IndexEntry& e) {
            return e.uri == t.subject.value && e.property == t.predicate.value;
          });
          CHECK_MESSAGE(found, text::join(gram, " "));
        }
    }
    for (const auto& [key, bucket] : index.entries())
      for (const auto& e : bucket) {
        const auto source = text::normalize_words(e.value);
        std::vector<std::string> key_words;
        for (const auto& w : text::split_words(key)) key_words.push_back(w);
        if (e.property == kUriMatch) {
          CHECK(text::normalize(e.value) == key);
        } else {
          CHECK(contiguous_in(source, key_words));
        }
      }
  }

  TEST_CASE("max_ngram bounds key length") {
    TripleSet s = parse_ntriples(std::string_view(
        "<urn:x> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:T> .\n"
        "<urn:x> <http://www.w3.org/2000/01/rdf-schema#label> \"alpha beta gamma delta epsilon\" .\n"));
    IndexConfig c;
    c.uri_fragments = false;
    c.max_ngram = 2;
    const InvertedIndex index = build(s, c);
    CHECK(index.contains("alpha beta"));
    CHECK_FALSE(index.contains("alpha beta gamma"));
    CHECK_FALSE(index.contains("alpha gamma"));
  }

  TEST_CASE("untyped instances are skipped and reported") {
    const TripleSet s = parse_ntriples(std::string_view(
        "<urn:x> <http://www.w3.org/2000/01/rdf-schema#label> \"orphan\" .\n"
        "<urn:y> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:T> .\n"
        "<urn:y> <http://www.w3.org/2000/01/rdf-schema#label> \"typed\" .\n"));
    IndexDiagnostics d;
    const InvertedIndex index = build(s, {}, &d);
    CHECK(d.untyped == std::vector<std::string>{"urn:x"});
    CHECK_FALSE(index.contains("orphan"));
    CHECK(index.contains("type"));
  }

  TEST_CASE("literals over the word limit are skipped") {
    std::string lit;
    for (int i = 0; i < 60; ++i) lit += "word" + std::to_string(i) + " ";
    const TripleSet s = parse_ntriples(std::string_view(
        "<urn:y> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:T> .\n"
        "<urn:y> <urn:abstract> \"" + lit + "\" .\n"));
    IndexDiagnostics d;
    const InvertedIndex index = build(s, {}, &d);
    CHECK(d.long_literals == 1);
    CHECK_FALSE(index.contains("word1"));
  }

  TEST_CASE("the property list restricts indexed literals") {
    IndexConfig c;
    c.properties = {fx::kSider + "side-EffectName"};
    const InvertedIndex index = build(fx::qald_store(), c);
    CHECK(index.contains("stroke"));
    CHECK_FALSE(index.contains("ibuprofen"));
    CHECK(index.contains(text::normalize("possible disease target")));
  }

  TEST_CASE("save and load round-trip bit for bit") {
    fx::TempDir dir;
    InvertedIndex index = qald_index();
    index.meta.build_timestamp = 1700000000;
    save_index(index, dir.path() / "index.tsv");
    const InvertedIndex back = load_index(dir.path() / "index.tsv");
    CHECK(back == index);
    CHECK(serialize_index(back) == serialize_index(index));
  }

  TEST_CASE("truncated, tampered and foreign files fail to load") {
    const std::string text = serialize_index(qald_index());
    CHECK_THROWS_AS(parse_index(text.substr(0, text.size() / 2)), LoadError);
    std::string tampered = text;
    tampered.replace(tampered.find("stroke"), 6, "strike");
    CHECK_THROWS_AS(parse_index(tampered), LoadError);
    std::string version = text;
    version.replace(version.find(" v1 "), 4, " v9 ");
    CHECK_THROWS_AS(parse_index(version), LoadError);
    CHECK_THROWS_AS(parse_index(""), LoadError);
    CHECK_THROWS_AS(parse_index("hello\n"), LoadError);
    CHECK_THROWS_AS(load_index("/nonexistent/index.tsv"), LoadError);
  }

  TEST_CASE("index build is deterministic") {
    CHECK(serialize_index(build(fx::qald_store())) == serialize_index(build(fx::qald_store())));
    IndexConfig c;
    c.max_ngram = 3;
    CHECK(build(fx::qald_store(), c).meta.config_digest != qald_index().meta.config_digest);
  }

  TEST_CASE("fuzzy keys are single words within one edit sharing the first letter") {
    CHECK(qald_index().fuzzy_keys("brca") == std::vector<std::string>{"brca1", "brca2"});
    CHECK(qald_index().fuzzy_keys("xrca1").empty());
  }
}
