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

#include <random>

#include "soda/text.hpp"

using namespace soda::text;
using Words = std::vector<std::string>;

TEST_SUITE("text") {
  TEST_CASE("URI fragments split on camel case and punctuation") {
    CHECK(tokenize_uri_fragment("http://example.org/drugbank/possibleDiseaseTarget") == Words{"possible", "disease", "target"});
    CHECK(tokenize_uri_fragment("http://example.org/diseasome/drugs") == Words{"drugs"});
    CHECK(tokenize_uri_fragment("http://example.org/sider/side-EffectName") == Words{"side", "effect", "name"});
    CHECK(tokenize_uri_fragment("http://example.org/v#has_part.of") == Words{"has", "part", "of"});
    CHECK(tokenize_uri_fragment("http://example.org/x/HTTPServer2Config") == Words{"http", "server", "config"});
    CHECK(tokenize_uri_fragment("http://example.org/x/12345").empty());
  }

  TEST_CASE("local names") {
    CHECK(local_name("http://a/b#c") == "c");
    CHECK(local_name("http://a/b/c") == "c");
    CHECK(local_name("urn:x") == "urn:x");
  }

  TEST_CASE("normalization lowercases, strips stopwords and stems") {
    CHECK(normalize("What are the Drugs?") == "drug");
    CHECK(normalize("possible disease targets") == "possibl diseas target");
    CHECK(normalize("side-Effect name") == "side effect name");
    CHECK(normalize("") == "");
    CHECK(clean("  Breast   cancer! ") == "breast cancer");
    CHECK(is_stopword("the"));
    CHECK_FALSE(is_stopword("drug"));
  }

  TEST_CASE("Porter stemming reference pairs") {
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("generalizations") == "gener");
    CHECK(porter_stem("orthologous") == "ortholog");
    CHECK(porter_stem("genes") == "gene");
    // Known limitation of the algorithm: the adjective does not reduce to its noun.
    CHECK(porter_stem("gaseous") != porter_stem("gas"));
  }

  TEST_CASE("string similarity is normalized Levenshtein") {
    CHECK(string_similarity("drug", "drug") == 1.0);
    CHECK(string_similarity("brca", "brca1") == doctest::Approx(0.8));
    CHECK(string_similarity("gene", "oogenesis") == doctest::Approx(4.0 / 9.0));
    CHECK(string_similarity("", "") == 1.0);
    CHECK(levenshtein("kitten", "sitting") == 3);
  }

  TEST_CASE("string similarity is symmetric and bounded") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> len(0, 8), ch(0, 3);
    for (int i = 0; i < 500; ++i) {
      std::string a, b;
      for (int k = len(rng); k > 0; --k) a.push_back(static_cast<char>('a' + ch(rng)));
      for (int k = len(rng); k > 0; --k) b.push_back(static_cast<char>('a' + ch(rng)));
      const double s = string_similarity(a, b);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(s == string_similarity(b, a));
      CHECK((s == 1.0) == (a == b));
    }
  }

  TEST_CASE("fixed six-decimal rendering") {
    CHECK(format_fixed6(1.0) == "1.000000");
    CHECK(format_fixed6(0.1234567) == "0.123457");
    CHECK(round6(round6(2.0 / 3.0)) == round6(2.0 / 3.0));
    CHECK(fnv1a_hex("").size() == 16);
  }
}
