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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soda/rdf.hpp"

namespace soda {

class SparqlSyntaxError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;
  bool operator==(const Variable&) const = default;
};

using Term = std::variant<Variable, Atom>;

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;
  bool operator==(const TriplePattern&) const = default;
};

struct FilterExpr {
  enum class Op { Regex, Eq, Ne, Lt, Gt, Le, Ge };

  Op op = Op::Eq;
  std::string variable;  // left operand
  Term rhs;              // right operand for comparisons
  std::string pattern;   // regex only
  bool case_insensitive = true;

  bool operator==(const FilterExpr&) const = default;
};

/// `VALUES ?var { ... }` with a single variable.
struct ValuesBlock {
  std::string variable;
  std::vector<Atom> values;
  bool operator==(const ValuesBlock&) const = default;
};

/// The SELECT subset the query generator emits.
struct QueryAST {
  std::vector<std::string> projection;
  std::vector<TriplePattern> patterns;
  std::vector<ValuesBlock> values;
  std::vector<FilterExpr> filters;
  std::vector<std::vector<TriplePattern>> optionals;
  bool distinct = false;
  std::optional<std::size_t> limit;
  std::optional<std::size_t> offset;

  bool operator==(const QueryAST&) const = default;
};

/// Rows are aligned with header; std::nullopt marks a variable left unbound by an OPTIONAL.
struct BindingTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<Atom>>> rows;

  std::optional<std::size_t> column(std::string_view var) const;

  /// Tab-separated rendering (header line, then one line per row, N-Triples terms).
  std::string serialize() const;

  bool operator==(const BindingTable&) const = default;
};

/// Parses the supported subset: PREFIX declarations, SELECT [DISTINCT] (vars | *)
/// WHERE { triple patterns, VALUES, FILTER, OPTIONAL } [LIMIT n] [OFFSET n].
QueryAST parse_sparql(std::string_view text);

/// Canonical rendering with fully expanded IRIs. parse_sparql(to_sparql(q)) == q.
std::string to_sparql(const QueryAST& query);

/// Rendering with IRIs compacted against prefix -> namespace pairs and PREFIX lines.
std::string to_sparql(const QueryAST& query, const std::map<std::string, std::string>& prefixes);

/// Throws EvalError for an empty pattern list, unknown projected variables and
/// filters over variables that the required patterns do not bind.
void validate(const QueryAST& query);

/// Left-join/filter semantics over the store. Rows are sorted by their bound values
/// (unbound first), then DISTINCT, OFFSET and LIMIT are applied in that order.
BindingTable evaluate(const QueryAST& query, const TripleSet& store);

/// Row ordering used by evaluate(): lexicographic over columns, unbound first,
/// atoms by value, kind, datatype, language.
bool row_less(const std::vector<std::optional<Atom>>& a, const std::vector<std::optional<Atom>>& b);

/// Filter semantics shared by every evaluator: comparisons coerce numeric
/// literals, non-numeric ordering comparisons are false, regex applies to literals.
bool filter_holds(const FilterExpr& f, const Atom& lhs, const Atom* rhs);

std::string escape_sparql_string(std::string_view s);

/// Backslash-escapes regex metacharacters.
std::string escape_regex(std::string_view s);

}  // namespace soda
