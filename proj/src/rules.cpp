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

#include "soda/rules.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "soda/text.hpp"

namespace soda {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(',', start);
    if (pos == std::string_view::npos) pos = s.size();
    if (auto piece = trim(s.substr(start, pos - start)); !piece.empty()) out.push_back(std::move(piece));
    start = pos + 1;
  }
  return out;
}

void validate_rule(const RewriteRule& r) {
  auto fail = [&](const std::string& what) { throw RuleError("rule '" + r.name + "': " + what); };
  if (r.trigger_keys.empty()) fail("empty trigger list");
  if (r.head.empty()) fail("empty head");
  if (r.body.empty()) fail("empty body");
  std::set<std::string> body_vars;
  auto collect = [&](const Term& t) {
    if (const auto* v = std::get_if<Variable>(&t)) body_vars.insert(v->name);
  };
  for (const auto& p : r.body) {
    collect(p.subject);
    collect(p.predicate);
    collect(p.object);
  }
  for (const auto& h : r.head) {
    if (!body_vars.contains(h.variable)) fail("head variable ?" + h.variable + " does not occur in the body");
    if (!is_absolute_iri(h.cls)) fail("head variable ?" + h.variable + " has no class IRI");
  }
  for (const auto& f : r.filters)
    if (!body_vars.contains(f.variable)) fail("filter variable ?" + f.variable + " does not occur in the body");
}

}  // namespace

RuleSet parse_rules(std::string_view text_in) {
  RuleSet rules;
  std::istringstream in{std::string(text_in)};
  std::string raw;
  std::size_t line_no = 0;
  std::unique_ptr<RewriteRule> current;
  bool in_body = false;
  std::string body;
  auto fail = [&](const std::string& what) { throw RuleError("line " + std::to_string(line_no) + ": " + what); };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line == "END") {
      if (!current) fail("END without RULE");
      try {
        const QueryAST q = parse_sparql("SELECT * WHERE {\n" + body + "\n}");
        current->body = q.patterns;
        current->filters = q.filters;
        if (!q.optionals.empty() || !q.values.empty()) fail("rule '" + current->name + "': only triple patterns and FILTERs are allowed");
      } catch (const SparqlSyntaxError& e) {
        throw RuleError("rule '" + current->name + "': bad body: " + e.what());
      }
      validate_rule(*current);
      rules.push_back(std::move(current));
      current.reset();
      in_body = false;
      body.clear();
      continue;
    }
    if (in_body) {
      body += raw;
      body += '\n';
      continue;
    }
    if (line.empty() || line.starts_with('#')) continue;
    const auto sp = line.find_first_of(" \t");
    const std::string keyword = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? std::string{} : trim(line.substr(sp));
    if (keyword == "RULE") {
      if (current) fail("rule '" + current->name + "' is missing END");
      if (rest.empty()) fail("RULE without a name");
      current = std::make_unique<RewriteRule>();
      current->name = rest;
      continue;
    }
    if (!current) fail("'" + keyword + "' outside a RULE block");
    if (keyword == "TRIGGER") {
      for (const auto& k : split_commas(rest))
        if (auto key = text::normalize(k); !key.empty()) current->trigger_keys.push_back(std::move(key));
    } else if (keyword == "HEAD") {
      for (const auto& item : split_commas(rest)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) fail("rule '" + current->name + "': head item '" + item + "' is not var:class");
        std::string var = trim(item.substr(0, colon));
        if (var.starts_with('?')) var.erase(0, 1);
        std::string cls = trim(item.substr(colon + 1));
        if (cls.starts_with('<') && cls.ends_with('>')) cls = cls.substr(1, cls.size() - 2);
        current->head.push_back({std::move(var), std::move(cls)});
      }
    } else if (keyword == "BODY") {
      in_body = true;
      if (!rest.empty()) body = rest + "\n";
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  if (current) throw RuleError("rule '" + current->name + "' is missing END");
  return rules;
}

RuleSet load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RuleError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str());
}

std::shared_ptr<const RewriteRule> find_rule(const RuleSet& rules, std::string_view key) {
  for (const auto& r : rules)
    if (std::find(r->trigger_keys.begin(), r->trigger_keys.end(), key) != r->trigger_keys.end()) return r;
  return nullptr;
}

}  // namespace soda
