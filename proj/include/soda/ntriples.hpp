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

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "soda/rdf.hpp"

namespace soda {

/// Malformed N-Triples input; line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct NTriplesOptions {
  /// Skip malformed lines instead of throwing.
  bool lenient = false;
};

struct NTriplesReport {
  std::size_t lines = 0;
  std::size_t bad_lines = 0;
  std::size_t duplicates = 0;
  std::vector<std::size_t> bad_line_numbers;
};

TripleSet parse_ntriples(std::istream& in, const NTriplesOptions& options = {},
                         NTriplesReport* report = nullptr);
TripleSet parse_ntriples(std::string_view text, const NTriplesOptions& options = {},
                         NTriplesReport* report = nullptr);

/// Parses one N-Triples line (without the trailing newline). Returns false for
/// blank and comment-only lines. Throws std::invalid_argument on syntax errors.
bool parse_ntriples_line(std::string_view line, Triple& out);

}  // namespace soda
