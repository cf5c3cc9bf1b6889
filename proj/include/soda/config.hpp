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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soda/index.hpp"
#include "soda/matcher.hpp"
#include "soda/query_graph.hpp"
#include "soda/sparql_gen.hpp"

namespace soda {

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Every tunable of the engine. Keys are dotted names (match.alpha, gen.limit, ...).
struct EngineConfig {
  IndexConfig index;
  MatcherConfig match;
  BuildConfig build;
  GenConfig gen;
  int top_n_interpretations = 10;
  std::string embeddings_file;
  std::string rules_file;
  std::string exec_mode = "embedded";  // embedded | remote
  std::string endpoint;
  int timeout_ms = 30000;
  std::string artifacts_dir = "artifacts";
  int port = 8075;
  bool ablation = false;

  /// Sets one key; unknown keys and unparsable or out-of-range values throw ConfigError.
  void set(std::string_view key, std::string_view value);
  /// Every key with its current value, rendered as in a config file.
  std::map<std::string, std::string> effective() const;

  /// Matcher and builder settings with the ablation switch applied.
  MatcherConfig matcher() const;
  BuildConfig builder() const;
};

/// All recognized keys, sorted.
const std::vector<std::string>& config_keys();

/// "match.alpha" -> "SODA_MATCH_ALPHA".
std::string env_name(std::string_view key);

/// key=value lines; '#' starts a comment line; blank lines ignored.
void apply_config_text(EngineConfig& config, std::string_view text);
void apply_config_file(EngineConfig& config, const std::filesystem::path& path);

/// Applies SODA_* variables for every known key, read through getenv.
void apply_environment(EngineConfig& config,
                       const std::function<std::optional<std::string>(const std::string&)>& getenv);
void apply_environment(EngineConfig& config);

}  // namespace soda
