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

#include "soda/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "soda/text.hpp"

namespace soda {

namespace {

// ---------------------------------------------------------------------------
// Parsing

class SparqlParser {
 public:
  explicit SparqlParser(std::string_view s) : s_(s) {}

  QueryAST parse() {
    QueryAST q;
    skip();
    while (keyword("PREFIX")) prefix_decl();
    if (!keyword("SELECT")) fail("expected SELECT");
    if (keyword("DISTINCT")) q.distinct = true;
    bool star = false;
    skip();
    if (peek() == '*') {
      ++pos_;
      star = true;
    } else {
      while (peek() == '?' || peek() == '$') {
        q.projection.push_back(variable());
        skip();
      }
      if (q.projection.empty()) fail("empty projection");
    }
    keyword("WHERE");
    expect('{');
    group(q);
    expect('}');
    // LIMIT and OFFSET may come in either order.
    for (int i = 0; i < 2; ++i) {
      if (keyword("LIMIT")) {
        q.limit = integer();
      } else if (keyword("OFFSET")) {
        q.offset = integer();
      }
    }
    skip();
    if (pos_ != s_.size()) fail("trailing content");
    if (star) q.projection = all_variables(q);
    return q;
  }

 private:
  static std::vector<std::string> all_variables(const QueryAST& q) {
    std::vector<std::string> out;
    auto add = [&](const Term& t) {
      if (const auto* v = std::get_if<Variable>(&t))
        if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    };
    for (const auto& vb : q.values)
      if (std::find(out.begin(), out.end(), vb.variable) == out.end()) out.push_back(vb.variable);
    for (const auto& p : q.patterns) {
      add(p.subject);
      add(p.predicate);
      add(p.object);
    }
    for (const auto& block : q.optionals)
      for (const auto& p : block) {
        add(p.subject);
        add(p.predicate);
        add(p.object);
      }
    return out;
  }

  void group(QueryAST& q) {
    while (true) {
      skip();
      if (peek() == '}' || at_end()) return;
      if (keyword("FILTER")) {
        q.filters.push_back(filter());
      } else if (keyword("OPTIONAL")) {
        expect('{');
        std::vector<TriplePattern> block;
        while (true) {
          skip();
          if (peek() == '}') break;
          block.push_back(triple_pattern());
          skip();
          if (peek() == '.') ++pos_;
        }
        expect('}');
        if (block.empty()) fail("empty OPTIONAL block");
        q.optionals.push_back(std::move(block));
      } else if (keyword("VALUES")) {
        ValuesBlock vb;
        vb.variable = variable();
        expect('{');
        while (true) {
          skip();
          if (peek() == '}') break;
          Term t = term();
          const auto* a = std::get_if<Atom>(&t);
          if (!a) fail("VALUES entries must be constants");
          vb.values.push_back(*a);
        }
        expect('}');
        q.values.push_back(std::move(vb));
      } else {
        q.patterns.push_back(triple_pattern());
      }
      skip();
      if (peek() == '.') ++pos_;
    }
  }

  TriplePattern triple_pattern() {
    TriplePattern p;
    p.subject = term();
    p.predicate = term();
    p.object = term();
    if (const auto* a = std::get_if<Atom>(&p.subject); a && a->is_literal())
      fail("literal in subject position");
    if (const auto* a = std::get_if<Atom>(&p.predicate); a && !a->is_iri())
      fail("predicate must be an IRI");
    return p;
  }

  FilterExpr filter() {
    expect('(');
    FilterExpr f;
    skip();
    if (keyword("regex")) {
      f.op = FilterExpr::Op::Regex;
      expect('(');
      f.variable = variable();
      expect(',');
      Term pat = term();
      const auto* pa = std::get_if<Atom>(&pat);
      if (!pa || !pa->is_literal()) fail("regex pattern must be a string");
      f.pattern = pa->value;
      f.case_insensitive = false;
      skip();
      if (peek() == ',') {
        ++pos_;
        Term flags = term();
        const auto* fa = std::get_if<Atom>(&flags);
        if (!fa || !fa->is_literal()) fail("regex flags must be a string");
        if (fa->value == "i") {
          f.case_insensitive = true;
        } else if (!fa->value.empty()) {
          fail("unsupported regex flags");
        }
      }
      expect(')');
    } else {
      f.variable = variable();
      skip();
      f.op = comparison_op();
      f.rhs = term();
    }
    expect(')');
    return f;
  }

  FilterExpr::Op comparison_op() {
    auto take = [&](std::string_view op) {
      if (s_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return true;
      }
      return false;
    };
    if (take("!=")) return FilterExpr::Op::Ne;
    if (take("<=")) return FilterExpr::Op::Le;
    if (take(">=")) return FilterExpr::Op::Ge;
    if (take("=")) return FilterExpr::Op::Eq;
    if (take("<")) return FilterExpr::Op::Lt;
    if (take(">")) return FilterExpr::Op::Gt;
    fail("expected comparison operator");
  }

  Term term() {
    skip();
    const char c = peek();
    if (c == '?' || c == '$') return Variable{variable()};
    if (c == '<') return Atom::iri(iri_ref());
    if (c == '"' || c == '\'') return string_literal();
    if (c == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') {
      pos_ += 2;
      return Atom::blank(name_chars());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') return number();
    // 'a' keyword for rdf:type
    if (c == 'a' && (pos_ + 1 == s_.size() || std::isspace(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Atom::iri(std::string(vocab::kRdfType));
    }
    return Atom::iri(prefixed_name());
  }

  Atom string_literal() {
    const char quote = peek();
    ++pos_;
    std::string v;
    while (true) {
      if (at_end()) fail("unterminated string");
      const char c = s_[pos_++];
      if (c == quote) break;
      if (c == '\\') {
        if (at_end()) fail("dangling escape");
        const char e = s_[pos_++];
        switch (e) {
          case 't': v.push_back('\t'); break;
          case 'n': v.push_back('\n'); break;
          case 'r': v.push_back('\r'); break;
          case 'b': v.push_back('\b'); break;
          case 'f': v.push_back('\f'); break;
          case '"': v.push_back('"'); break;
          case '\'': v.push_back('\''); break;
          case '\\': v.push_back('\\'); break;
          default: fail("unknown escape");
        }
        continue;
      }
      v.push_back(c);
    }
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
      return Atom::literal(std::move(v), {}, std::string(s_.substr(start, pos_ - start)));
    }
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      std::string dt = peek() == '<' ? iri_ref() : prefixed_name();
      return Atom::literal(std::move(v), std::move(dt));
    }
    return Atom::literal(std::move(v));
  }

  Atom number() {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    bool dot = false;
    bool exp = false;
    while (!at_end()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' && !dot && !exp && pos_ + 1 < s_.size() &&
                 std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        dot = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        ++pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
      } else {
        break;
      }
    }
    std::string lexical(s_.substr(start, pos_ - start));
    if (lexical.empty() || lexical == "-" || lexical == "+") fail("bad number");
    std::string_view dt = exp ? vocab::kXsdDouble : dot ? vocab::kXsdDecimal : vocab::kXsdInteger;
    return Atom::literal(std::move(lexical), std::string(dt));
  }

  std::string iri_ref() {
    expect('<');
    const std::size_t start = pos_;
    while (!at_end() && peek() != '>') {
      if (std::isspace(static_cast<unsigned char>(peek()))) fail("whitespace in IRI");
      ++pos_;
    }
    if (at_end()) fail("unterminated IRI");
    std::string v(s_.substr(start, pos_ - start));
    ++pos_;
    if (!is_absolute_iri(v)) fail("relative IRI <" + v + ">");
    return v;
  }

  std::string prefixed_name() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
      ++pos_;
    if (peek() != ':') fail("expected term");
    const std::string prefix(s_.substr(start, pos_ - start));
    ++pos_;
    const auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
    std::string local;
    while (!at_end()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
          static_cast<unsigned char>(c) >= 0x80) {
        local.push_back(c);
        ++pos_;
      } else if (c == '.' && pos_ + 1 < s_.size() &&
                 (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_')) {
        local.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    return it->second + local;
  }

  void prefix_decl() {
    skip();
    const std::size_t start = pos_;
    while (!at_end() && peek() != ':') ++pos_;
    if (at_end()) fail("bad PREFIX");
    std::string name(s_.substr(start, pos_ - start));
    ++pos_;
    skip();
    prefixes_[name] = iri_ref();
    skip();
  }

  std::string variable() {
    skip();
    if (peek() != '?' && peek() != '$') fail("expected variable");
    ++pos_;
    std::string name = name_chars();
    if (name.empty()) fail("empty variable name");
    return name;
  }

  std::string name_chars() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::size_t integer() {
    skip();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected non-negative integer");
    return static_cast<std::size_t>(std::stoull(std::string(s_.substr(start, pos_ - start))));
  }

  bool keyword(std::string_view kw) {
    skip();
    if (s_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(s_[pos_ + i])) != std::toupper(static_cast<unsigned char>(kw[i])))
        return false;
    const std::size_t after = pos_ + kw.size();
    if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SparqlSyntaxError(what + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, std::string> prefixes_;
};

// ---------------------------------------------------------------------------
// Serialization

struct Renderer {
  const std::map<std::string, std::string>* prefixes = nullptr;

  std::string iri(const std::string& v) const {
    if (prefixes) {
      for (const auto& [p, ns] : *prefixes) {
        if (v.size() > ns.size() && v.starts_with(ns)) {
          const std::string_view local = std::string_view(v).substr(ns.size());
          const bool simple = std::all_of(local.begin(), local.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
          });
          if (simple) return p + ":" + std::string(local);
        }
      }
    }
    return "<" + v + ">";
  }

  std::string atom(const Atom& a) const {
    switch (a.kind) {
      case Atom::Kind::IRI: return iri(a.value);
      case Atom::Kind::Blank: return "_:" + a.value;
      case Atom::Kind::Literal: {
        std::string out = "\"" + escape_sparql_string(a.value) + "\"";
        if (!a.lang.empty()) {
          out += "@" + a.lang;
        } else if (!a.datatype.empty()) {
          out += "^^" + iri(a.datatype);
        }
        return out;
      }
    }
    return {};
  }

  std::string term(const Term& t) const {
    if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
    return atom(std::get<Atom>(t));
  }

  std::string pattern(const TriplePattern& p) const {
    return term(p.subject) + " " + term(p.predicate) + " " + term(p.object) + " .";
  }

  static const char* op_text(FilterExpr::Op op) {
    switch (op) {
      case FilterExpr::Op::Eq: return "=";
      case FilterExpr::Op::Ne: return "!=";
      case FilterExpr::Op::Lt: return "<";
      case FilterExpr::Op::Gt: return ">";
      case FilterExpr::Op::Le: return "<=";
      case FilterExpr::Op::Ge: return ">=";
      case FilterExpr::Op::Regex: break;
    }
    return "";
  }

  std::string render(const QueryAST& q) const {
    std::ostringstream out;
    if (prefixes)
      for (const auto& [p, ns] : *prefixes) out << "PREFIX " << p << ": <" << ns << ">\n";
    out << "SELECT ";
    if (q.distinct) out << "DISTINCT ";
    for (std::size_t i = 0; i < q.projection.size(); ++i) out << (i ? " ?" : "?") << q.projection[i];
    out << " WHERE {\n";
    for (const auto& vb : q.values) {
      out << "  VALUES ?" << vb.variable << " {";
      for (const auto& a : vb.values) out << " " << atom(a);
      out << " }\n";
    }
    for (const auto& p : q.patterns) out << "  " << pattern(p) << "\n";
    for (const auto& f : q.filters) {
      out << "  FILTER(";
      if (f.op == FilterExpr::Op::Regex) {
        out << "regex(?" << f.variable << ", \"" << escape_sparql_string(f.pattern) << "\"";
        if (f.case_insensitive) out << ", \"i\"";
        out << ")";
      } else {
        out << "?" << f.variable << " " << op_text(f.op) << " " << term(f.rhs);
      }
      out << ")\n";
    }
    for (const auto& block : q.optionals) {
      out << "  OPTIONAL {";
      for (const auto& p : block) out << " " << pattern(p);
      out << " }\n";
    }
    out << "}";
    if (q.limit) out << "\nLIMIT " << *q.limit;
    if (q.offset) out << "\nOFFSET " << *q.offset;
    return out.str();
  }
};

// ---------------------------------------------------------------------------
// Evaluation

using Slot = const Atom*;
using Partial = std::vector<Slot>;

struct CompiledPattern {
  // Each position is either a constant (var < 0) or a variable slot.
  const Atom* constant[3] = {nullptr, nullptr, nullptr};
  int var[3] = {-1, -1, -1};
};

class Evaluator {
 public:
  Evaluator(const QueryAST& q, const TripleSet& store) : q_(q), store_(store) {
    for (const auto& vb : q.values) slot(vb.variable);
    for (const auto& p : q.patterns) required_.push_back(compile(p));
    for (const auto& block : q.optionals) {
      std::vector<CompiledPattern> c;
      for (const auto& p : block) c.push_back(compile(p));
      optional_.push_back(std::move(c));
    }
  }

  BindingTable run() {
    std::vector<Partial> rows{Partial(slots_.size(), nullptr)};
    for (const auto& vb : q_.values) {
      const int s = slots_.at(vb.variable);
      std::vector<Partial> next;
      for (const auto& row : rows)
        for (const auto& a : vb.values) {
          Partial r = row;
          r[static_cast<std::size_t>(s)] = &a;
          next.push_back(std::move(r));
        }
      rows = std::move(next);
    }

    std::vector<Partial> solutions;
    for (const auto& row : rows) join(required_, row, solutions);

    std::vector<Partial> filtered;
    for (auto& row : solutions)
      if (passes_filters(row)) filtered.push_back(std::move(row));

    for (const auto& block : optional_) {
      std::vector<Partial> next;
      for (const auto& row : filtered) {
        const std::size_t before = next.size();
        join(block, row, next);
        if (next.size() == before) next.push_back(row);
      }
      filtered = std::move(next);
    }

    BindingTable table;
    table.header = q_.projection;
    std::vector<int> cols;
    for (const auto& v : q_.projection) cols.push_back(slots_.at(v));
    table.rows.reserve(filtered.size());
    for (const auto& row : filtered) {
      std::vector<std::optional<Atom>> out;
      out.reserve(cols.size());
      for (const int c : cols) {
        const Slot a = row[static_cast<std::size_t>(c)];
        out.push_back(a ? std::optional<Atom>(*a) : std::nullopt);
      }
      table.rows.push_back(std::move(out));
    }
    std::sort(table.rows.begin(), table.rows.end(), row_less);
    if (q_.distinct) table.rows.erase(std::unique(table.rows.begin(), table.rows.end()), table.rows.end());
    const std::size_t offset = std::min(q_.offset.value_or(0), table.rows.size());
    table.rows.erase(table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(offset));
    if (q_.limit && table.rows.size() > *q_.limit) table.rows.resize(*q_.limit);
    return table;
  }

 private:
  int slot(const std::string& name) {
    const auto [it, inserted] = slots_.emplace(name, static_cast<int>(slots_.size()));
    return it->second;
  }

  CompiledPattern compile(const TriplePattern& p) {
    CompiledPattern c;
    const Term* terms[3] = {&p.subject, &p.predicate, &p.object};
    for (int i = 0; i < 3; ++i) {
      if (const auto* v = std::get_if<Variable>(terms[i])) {
        c.var[i] = slot(v->name);
      } else {
        c.constant[i] = &std::get<Atom>(*terms[i]);
      }
    }
    return c;
  }

  static const Atom* position(const CompiledPattern& p, const Partial& row, int i) {
    if (p.constant[i]) return p.constant[i];
    return row[static_cast<std::size_t>(p.var[i])];
  }

  // Depth-first nested-loop join; the next pattern is the one with the most
  // bound positions, ties broken by original order.
  void join(const std::vector<CompiledPattern>& patterns, const Partial& start, std::vector<Partial>& out) const {
    std::vector<bool> done(patterns.size(), false);
    Partial row = start;
    extend(patterns, done, patterns.size(), row, out);
  }

  void extend(const std::vector<CompiledPattern>& patterns, std::vector<bool>& done, std::size_t remaining,
              Partial& row, std::vector<Partial>& out) const {
    if (remaining == 0) {
      out.push_back(row);
      return;
    }
    std::size_t best = patterns.size();
    int best_bound = -1;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (done[i]) continue;
      int bound = 0;
      for (int k = 0; k < 3; ++k)
        if (position(patterns[i], row, k)) ++bound;
      if (bound > best_bound) {
        best_bound = bound;
        best = i;
      }
    }
    const CompiledPattern& p = patterns[best];
    done[best] = true;

    const Atom* s = position(p, row, 0);
    const Atom* pr = position(p, row, 1);
    const Atom* o = position(p, row, 2);

    auto visit = [&](const Triple& t) {
      const Atom* actual[3] = {&t.subject, &t.predicate, &t.object};
      int newly[3];
      int n_new = 0;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        const Atom* want = position(p, row, k);
        if (want) {
          ok = *want == *actual[k];
        } else {
          row[static_cast<std::size_t>(p.var[k])] = actual[k];
          newly[n_new++] = p.var[k];
        }
      }
      if (ok) extend(patterns, done, remaining - 1, row, out);
      for (int k = 0; k < n_new; ++k) row[static_cast<std::size_t>(newly[k])] = nullptr;
    };

    const auto& all = store_.triples();
    if (s) {
      for (const std::size_t id : store_.by_subject(*s)) visit(all[id]);
    } else if (o) {
      for (const std::size_t id : store_.by_object(*o)) visit(all[id]);
    } else if (pr) {
      for (const std::size_t id : store_.by_predicate(*pr)) visit(all[id]);
    } else {
      for (const auto& t : all) visit(t);
    }
    done[best] = false;
  }

  bool passes_filters(const Partial& row) {
    for (std::size_t i = 0; i < q_.filters.size(); ++i) {
      const FilterExpr& f = q_.filters[i];
      const Atom* lhs = row[static_cast<std::size_t>(slots_.at(f.variable))];
      if (!lhs) throw EvalError("filter variable ?" + f.variable + " is unbound");
      if (f.op == FilterExpr::Op::Regex) {
        if (!lhs->is_literal()) return false;
        if (!std::regex_search(lhs->value, regex_for(i))) return false;
        continue;
      }
      const Atom* rhs = nullptr;
      if (const auto* v = std::get_if<Variable>(&f.rhs)) {
        rhs = row[static_cast<std::size_t>(slots_.at(v->name))];
        if (!rhs) throw EvalError("filter variable ?" + v->name + " is unbound");
      } else {
        rhs = &std::get<Atom>(f.rhs);
      }
      if (!filter_holds(f, *lhs, rhs)) return false;
    }
    return true;
  }

  const std::regex& regex_for(std::size_t filter) {
    auto it = regexes_.find(filter);
    if (it == regexes_.end()) {
      const FilterExpr& f = q_.filters[filter];
      auto flags = std::regex::ECMAScript;
      if (f.case_insensitive) flags |= std::regex::icase;
      try {
        it = regexes_.emplace(filter, std::regex(f.pattern, flags)).first;
      } catch (const std::regex_error& e) {
        throw EvalError("invalid regex \"" + f.pattern + "\": " + e.what());
      }
    }
    return it->second;
  }

  const QueryAST& q_;
  const TripleSet& store_;
  std::unordered_map<std::string, int> slots_;
  std::vector<CompiledPattern> required_;
  std::vector<std::vector<CompiledPattern>> optional_;
  std::unordered_map<std::size_t, std::regex> regexes_;
};

int compare_atoms(const Atom& a, const Atom& b) {
  if (const int c = a.value.compare(b.value)) return c;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (const int c = a.datatype.compare(b.datatype)) return c;
  return a.lang.compare(b.lang);
}

void collect_vars(const TriplePattern& p, std::set<std::string>& out) {
  for (const Term* t : {&p.subject, &p.predicate, &p.object})
    if (const auto* v = std::get_if<Variable>(t)) out.insert(v->name);
}

}  // namespace

std::optional<std::size_t> BindingTable::column(std::string_view var) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == var) return i;
  return std::nullopt;
}

std::string BindingTable::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += '\t';
    out += "?" + header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      if (row[i]) out += row[i]->to_ntriples();
    }
    out += '\n';
  }
  return out;
}

QueryAST parse_sparql(std::string_view text) { return SparqlParser(text).parse(); }

std::string to_sparql(const QueryAST& query) { return Renderer{}.render(query); }

std::string to_sparql(const QueryAST& query, const std::map<std::string, std::string>& prefixes) {
  Renderer r;
  r.prefixes = &prefixes;
  return r.render(query);
}

void validate(const QueryAST& q) {
  if (q.patterns.empty()) throw EvalError("empty graph pattern");
  std::set<std::string> required;
  for (const auto& p : q.patterns) collect_vars(p, required);
  for (const auto& vb : q.values) required.insert(vb.variable);
  std::set<std::string> all = required;
  for (const auto& block : q.optionals)
    for (const auto& p : block) collect_vars(p, all);
  for (const auto& v : q.projection)
    if (!all.contains(v)) throw EvalError("projected variable ?" + v + " does not occur in the pattern");
  for (const auto& f : q.filters) {
    if (!required.contains(f.variable)) throw EvalError("filter variable ?" + f.variable + " is unbound");
    if (const auto* v = std::get_if<Variable>(&f.rhs); v && f.op != FilterExpr::Op::Regex)
      if (!required.contains(v->name)) throw EvalError("filter variable ?" + v->name + " is unbound");
  }
}

BindingTable evaluate(const QueryAST& query, const TripleSet& store) {
  validate(query);
  return Evaluator(query, store).run();
}

bool row_less(const std::vector<std::optional<Atom>>& a, const std::vector<std::optional<Atom>>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].has_value() != b[i].has_value()) return !a[i].has_value();
    if (!a[i]) continue;
    if (const int c = compare_atoms(*a[i], *b[i])) return c < 0;
  }
  return a.size() < b.size();
}

bool filter_holds(const FilterExpr& f, const Atom& lhs, const Atom* rhs) {
  if (f.op == FilterExpr::Op::Regex) {
    if (!lhs.is_literal()) return false;
    auto flags = std::regex::ECMAScript;
    if (f.case_insensitive) flags |= std::regex::icase;
    return std::regex_search(lhs.value, std::regex(f.pattern, flags));
  }
  if (!rhs) return false;
  const auto ln = lhs.numeric();
  const auto rn = rhs->numeric();
  switch (f.op) {
    case FilterExpr::Op::Eq:
      return ln && rn ? *ln == *rn : lhs == *rhs;
    case FilterExpr::Op::Ne:
      return ln && rn ? *ln != *rn : !(lhs == *rhs);
    case FilterExpr::Op::Lt: return ln && rn && *ln < *rn;
    case FilterExpr::Op::Gt: return ln && rn && *ln > *rn;
    case FilterExpr::Op::Le: return ln && rn && *ln <= *rn;
    case FilterExpr::Op::Ge: return ln && rn && *ln >= *rn;
    case FilterExpr::Op::Regex: break;
  }
  return false;
}

std::string escape_sparql_string(std::string_view s) {
  std::string out;
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
  return out;
}

std::string escape_regex(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace soda
