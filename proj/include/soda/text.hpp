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

#include <string>
#include <string_view>
#include <vector>

namespace soda::text {

/// Lowercases ASCII letters; other bytes (including UTF-8 sequences) pass through.
std::string to_lower(std::string_view s);

/// Splits on every byte that is not an ASCII letter or digit and drops empty pieces.
/// Non-ASCII bytes are kept inside words.
std::vector<std::string> split_words(std::string_view s);

bool is_stopword(std::string_view word);

/// Porter (1980) suffix stripping. Expects a lowercase word.
std::string porter_stem(std::string_view word);

/// The key normalization shared by the index and the matcher:
/// lowercase, strip punctuation, drop stopwords, Porter-stem.
std::vector<std::string> normalize_words(std::string_view s);

/// normalize_words() joined with single spaces.
std::string normalize(std::string_view s);

/// Lowercase, punctuation-stripped, single-space joined; no stemming or stopword removal.
std::string clean(std::string_view s);

/// Keywords of the local name of an IRI (text after the last '#' or '/'),
/// split on camel case, punctuation and letter/digit boundaries. Pure digit
/// runs and single letters are dropped.
std::vector<std::string> tokenize_uri_fragment(std::string_view uri);

/// Text after the last '#' or '/'.
std::string_view local_name(std::string_view uri);

std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - levenshtein(a, b) / max(|a|, |b|); two empty strings are identical.
double string_similarity(std::string_view a, std::string_view b);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

/// Fixed-point rendering with six decimals.
std::string format_fixed6(double v);

/// The double nearest to format_fixed6(v); idempotent.
double round6(double v);

}  // namespace soda::text
