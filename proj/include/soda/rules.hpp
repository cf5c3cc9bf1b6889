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

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "soda/sparql.hpp"

namespace soda {

class RuleError : public Error {
 public:
  using Error::Error;
};

struct RuleHead {
  std::string variable;  // without '?'
  std::string cls;

  bool operator==(const RuleHead&) const = default;
};

/// A named pattern block triggered by question keywords. The first head
/// variable is bound to the class node the rule attaches to; the others are
/// projected.
struct RewriteRule {
  std::string name;
  std::vector<std::string> trigger_keys;  // normalized
  std::vector<RuleHead> head;
  std::vector<TriplePattern> body;
  std::vector<FilterExpr> filters;

  bool operator==(const RewriteRule&) const = default;
};

using RuleSet = std::vector<std::shared_ptr<const RewriteRule>>;

/// Blocks of
///   RULE <name>
///   TRIGGER <keyword>,<keyword>...
///   HEAD <var>:<class IRI>,...
///   BODY
///   <triple patterns and FILTERs, one or more lines>
///   END
/// Lines starting with '#' outside BODY are comments.
RuleSet parse_rules(std::string_view text);
RuleSet load_rules(const std::filesystem::path& path);

/// The rule whose trigger list contains key, if any.
std::shared_ptr<const RewriteRule> find_rule(const RuleSet& rules, std::string_view key);

}  // namespace soda
