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

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace soda {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace vocab {
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfProperty = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
inline constexpr std::string_view kRdfLangString = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kRdfsClass = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";

/// True for IRIs in the rdf:, rdfs:, owl: and xsd: namespaces.
bool is_builtin(std::string_view iri);
}  // namespace vocab

/// An RDF term. IRIs and blank-node labels are stored without delimiters.
struct Atom {
  enum class Kind : unsigned char { IRI, Literal, Blank };

  Kind kind = Kind::IRI;
  std::string value;
  std::string datatype;  // empty when absent
  std::string lang;      // empty when absent

  static Atom iri(std::string v) { return {Kind::IRI, std::move(v), {}, {}}; }
  static Atom blank(std::string v) { return {Kind::Blank, std::move(v), {}, {}}; }
  static Atom literal(std::string v, std::string datatype = {}, std::string lang = {}) {
    return {Kind::Literal, std::move(v), std::move(datatype), std::move(lang)};
  }

  bool is_iri() const { return kind == Kind::IRI; }
  bool is_literal() const { return kind == Kind::Literal; }
  bool is_blank() const { return kind == Kind::Blank; }

  /// Plain, xsd:string or language-tagged literal.
  bool is_string_literal() const;

  /// Numeric value of an xsd:integer/decimal/double literal.
  std::optional<double> numeric() const;

  /// N-Triples rendering.
  std::string to_ntriples() const;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

/// Absolute IRI check: a scheme followed by ':' and a non-empty remainder.
bool is_absolute_iri(std::string_view s);

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept;
};

struct Triple {
  Atom subject;
  Atom predicate;
  Atom object;

  std::string to_ntriples() const;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

/// A duplicate-free set of triples with per-position lookup.
/// Insertion order is preserved; equality is set equality.
class TripleSet {
 public:
  TripleSet() = default;

  /// Returns false when the triple was already present.
  bool insert(Triple t);

  bool contains(const Triple& t) const { return members_.contains(t); }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  std::span<const Triple> triples() const { return triples_; }

  /// Indices into triples() of those with the atom in the given position.
  std::span<const std::size_t> by_subject(const Atom& a) const { return find(subject_, a); }
  std::span<const std::size_t> by_predicate(const Atom& a) const { return find(predicate_, a); }
  std::span<const std::size_t> by_object(const Atom& a) const { return find(object_, a); }

  /// Objects of (subject, rdf:type, ?) that are IRIs, sorted.
  std::vector<std::string> types_of(const Atom& subject) const;

  /// Triples in canonical (sorted) order.
  std::vector<Triple> sorted() const;

  /// Sorted N-Triples serialization, one triple per line.
  std::string to_ntriples() const;

  /// FNV-1a digest of to_ntriples(); identifies a dataset.
  std::string digest() const;

  bool operator==(const TripleSet& other) const;

 private:
  using PositionMap = std::unordered_map<Atom, std::vector<std::size_t>, AtomHash>;
  static std::span<const std::size_t> find(const PositionMap& m, const Atom& a);

  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> members_;
  PositionMap subject_;
  PositionMap predicate_;
  PositionMap object_;
};

}  // namespace soda
