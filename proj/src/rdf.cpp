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

#include "soda/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "soda/text.hpp"

namespace soda {

namespace vocab {
bool is_builtin(std::string_view iri) {
  return iri.starts_with("http://www.w3.org/1999/02/22-rdf-syntax-ns#") ||
         iri.starts_with("http://www.w3.org/2000/01/rdf-schema#") ||
         iri.starts_with("http://www.w3.org/2002/07/owl#") || iri.starts_with(kXsd);
}
}  // namespace vocab

namespace {

void escape_literal(std::string& out, std::string_view s) {
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
}

std::size_t mix(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_absolute_iri(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == ':') return i + 1 < s.size();
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

bool Atom::is_string_literal() const {
  return kind == Kind::Literal &&
         (datatype.empty() || datatype == vocab::kXsdString || datatype == vocab::kRdfLangString);
}

std::optional<double> Atom::numeric() const {
  if (kind != Kind::Literal || !lang.empty()) return std::nullopt;
  const bool typed_numeric = datatype.starts_with(vocab::kXsd) &&
                             (datatype == vocab::kXsdInteger || datatype == vocab::kXsdDecimal ||
                              datatype == vocab::kXsdDouble ||
                              datatype.ends_with("#float") || datatype.ends_with("#int") ||
                              datatype.ends_with("#long") || datatype.ends_with("Integer"));
  if (!typed_numeric) return std::nullopt;
  if (value.empty()) return std::nullopt;
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + value.size()) return std::nullopt;
  return v;
}

std::string Atom::to_ntriples() const {
  std::string out;
  switch (kind) {
    case Kind::IRI:
      out.reserve(value.size() + 2);
      out += '<';
      out += value;
      out += '>';
      break;
    case Kind::Blank:
      out = "_:" + value;
      break;
    case Kind::Literal:
      out += '"';
      escape_literal(out, value);
      out += '"';
      if (!lang.empty()) {
        out += '@';
        out += lang;
      } else if (!datatype.empty()) {
        out += "^^<";
        out += datatype;
        out += '>';
      }
      break;
  }
  return out;
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
  std::size_t h = std::hash<std::string>{}(a.value);
  h = mix(h, static_cast<std::size_t>(a.kind));
  if (!a.datatype.empty()) h = mix(h, std::hash<std::string>{}(a.datatype));
  if (!a.lang.empty()) h = mix(h, std::hash<std::string>{}(a.lang));
  return h;
}

std::string Triple::to_ntriples() const {
  return subject.to_ntriples() + " " + predicate.to_ntriples() + " " + object.to_ntriples() + " .";
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  const AtomHash h;
  return mix(mix(h(t.subject), h(t.predicate)), h(t.object));
}

bool TripleSet::insert(Triple t) {
  if (members_.contains(t)) return false;
  const std::size_t id = triples_.size();
  subject_[t.subject].push_back(id);
  predicate_[t.predicate].push_back(id);
  object_[t.object].push_back(id);
  members_.insert(t);
  triples_.push_back(std::move(t));
  return true;
}

std::span<const std::size_t> TripleSet::find(const PositionMap& m, const Atom& a) {
  const auto it = m.find(a);
  if (it == m.end()) return {};
  return it->second;
}

std::vector<std::string> TripleSet::types_of(const Atom& subject) const {
  static const Atom type = Atom::iri(std::string(vocab::kRdfType));
  std::vector<std::string> out;
  for (const std::size_t id : by_subject(subject)) {
    const Triple& t = triples_[id];
    if (t.predicate == type && t.object.is_iri()) out.push_back(t.object.value);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> TripleSet::sorted() const {
  std::vector<Triple> out(triples_.begin(), triples_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string TripleSet::to_ntriples() const {
  std::string out;
  for (const auto& t : sorted()) {
    out += t.to_ntriples();
    out += '\n';
  }
  return out;
}

std::string TripleSet::digest() const { return text::fnv1a_hex(to_ntriples()); }

bool TripleSet::operator==(const TripleSet& other) const {
  if (size() != other.size()) return false;
  return std::all_of(triples_.begin(), triples_.end(),
                     [&](const Triple& t) { return other.contains(t); });
}

}  // namespace soda
