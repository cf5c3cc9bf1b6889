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

#include "soda/ntriples.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace soda {

namespace {

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x110000) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    throw std::invalid_argument("code point out of range");
  }
}

class LineCursor {
 public:
  explicit LineCursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at column " + std::to_string(pos_ + 1));
  }

  Atom iri() {
    expect('<');
    std::string v;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = s_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        v += unicode_escape();
        continue;
      }
      if (c == ' ' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`' || static_cast<unsigned char>(c) < 0x20)
        fail("invalid character in IRI");
      v.push_back(c);
    }
    if (!is_absolute_iri(v)) fail("IRI is not absolute");
    return Atom::iri(std::move(v));
  }

  Atom blank() {
    expect('_');
    expect(':');
    const std::size_t start = pos_;
    while (!at_end()) {
      const auto c = static_cast<unsigned char>(s_[pos_]);
      if (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80) {
        ++pos_;
      } else {
        break;
      }
    }
    // A label may not end with '.', which then belongs to the statement terminator.
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return Atom::blank(std::string(s_.substr(start, pos_ - start)));
  }

  Atom literal() {
    expect('"');
    std::string v;
    while (true) {
      if (at_end()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        v.push_back(c);
        continue;
      }
      if (at_end()) fail("dangling escape");
      const char e = s_[pos_];
      switch (e) {
        case 't': v.push_back('\t'); ++pos_; break;
        case 'b': v.push_back('\b'); ++pos_; break;
        case 'n': v.push_back('\n'); ++pos_; break;
        case 'r': v.push_back('\r'); ++pos_; break;
        case 'f': v.push_back('\f'); ++pos_; break;
        case '"': v.push_back('"'); ++pos_; break;
        case '\'': v.push_back('\''); ++pos_; break;
        case '\\': v.push_back('\\'); ++pos_; break;
        case 'u':
        case 'U': v += unicode_escape(); break;
        default: fail("unknown escape");
      }
    }
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
      return Atom::literal(std::move(v), {}, std::string(s_.substr(start, pos_ - start)));
    }
    if (peek() == '^') {
      ++pos_;
      expect('^');
      Atom dt = iri();
      return Atom::literal(std::move(v), std::move(dt.value));
    }
    return Atom::literal(std::move(v));
  }

 private:
  // Positioned on the 'u' or 'U' following a backslash.
  std::string unicode_escape() {
    const char kind = peek();
    std::size_t digits = 0;
    if (kind == 'u') digits = 4;
    if (kind == 'U') digits = 8;
    if (digits == 0) fail("unknown escape");
    ++pos_;
    if (pos_ + digits > s_.size()) fail("short unicode escape");
    unsigned long cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char h = s_[pos_ + i];
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("bad hex digit");
      cp = cp * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(h))
                                                    ? h - '0'
                                                    : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
    }
    pos_ += digits;
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

bool parse_ntriples_line(std::string_view line, Triple& out) {
  LineCursor cur(line);
  cur.skip_ws();
  if (cur.at_end() || cur.peek() == '#') return false;

  Atom subject = cur.peek() == '_' ? cur.blank() : cur.iri();
  cur.skip_ws();
  Atom predicate = cur.iri();
  cur.skip_ws();
  Atom object;
  switch (cur.peek()) {
    case '<': object = cur.iri(); break;
    case '_': object = cur.blank(); break;
    case '"': object = cur.literal(); break;
    default: cur.fail("expected object term");
  }
  cur.skip_ws();
  cur.expect('.');
  cur.skip_ws();
  if (!cur.at_end() && cur.peek() != '#') cur.fail("trailing content");
  out = Triple{std::move(subject), std::move(predicate), std::move(object)};
  return true;
}

TripleSet parse_ntriples(std::istream& in, const NTriplesOptions& options, NTriplesReport* report) {
  TripleSet set;
  NTriplesReport local;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    Triple t;
    try {
      if (!parse_ntriples_line(line, t)) continue;
    } catch (const std::invalid_argument& e) {
      if (!options.lenient) throw ParseError(number, e.what());
      ++local.bad_lines;
      local.bad_line_numbers.push_back(number);
      continue;
    }
    if (!set.insert(std::move(t))) ++local.duplicates;
  }
  local.lines = number;
  if (report) *report = std::move(local);
  return set;
}

TripleSet parse_ntriples(std::string_view text, const NTriplesOptions& options, NTriplesReport* report) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in, options, report);
}

}  // namespace soda
