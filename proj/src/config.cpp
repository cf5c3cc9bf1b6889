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

#include "soda/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
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

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("config " + std::string(key) + "=" + std::string(value) + ": " + std::string(why));
}

bool parse_bool(std::string_view key, std::string_view v) {
  const std::string s = text::to_lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad(key, v, "expected true or false");
}

long long parse_int(std::string_view key, std::string_view v, long long lo, long long hi) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "expected an integer");
  if (out < lo || out > hi) bad(key, v, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return out;
}

double parse_real(std::string_view key, std::string_view v, double lo, double hi, bool open_lo = false,
                  bool open_hi = false) {
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) bad(key, v, "expected a number");
  if (out < lo || out > hi || (open_lo && out == lo) || (open_hi && out == hi)) bad(key, v, "out of range");
  return out;
}

// Shortest text that reads back as the same double.
std::string render_real(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "artifacts.dir",        "build.max_combinations", "build.max_forks",   "build.max_graphs",
      "build.max_path_hops",  "exec.endpoint",          "exec.mode",         "exec.timeout_ms",
      "gen.limit",            "gen.top_n_interpretations", "gen.use_values", "index.max_literal_words",
      "index.max_ngram",      "index.properties",       "index.uri_fragments", "match.alpha",
      "match.embeddings",     "match.fuzzy",            "match.semantic_threshold", "match.top_n",
      "pagerank.damping",     "pagerank.max_iter",      "pagerank.tol",      "port",
      "rank.ablation",        "rules.file",
  };
  return keys;
}

std::string env_name(std::string_view key) {
  std::string out = "SODA_";
  for (const char c : key) out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

void EngineConfig::set(std::string_view key, std::string_view raw) {
  const std::string v = trim(raw);
  constexpr long long kBig = 1'000'000'000;
  if (key == "index.properties") {
    index.properties.clear();
    if (v != "*" && !v.empty()) {
      std::size_t start = 0;
      while (start <= v.size()) {
        auto pos = v.find(',', start);
        if (pos == std::string::npos) pos = v.size();
        std::string item = trim(std::string_view(v).substr(start, pos - start));
        if (item.starts_with('<') && item.ends_with('>')) item = item.substr(1, item.size() - 2);
        if (!item.empty()) {
          if (!is_absolute_iri(item)) bad(key, v, "'" + item + "' is not an absolute IRI");
          index.properties.push_back(std::move(item));
        }
        start = pos + 1;
      }
    }
  } else if (key == "index.uri_fragments") {
    index.uri_fragments = parse_bool(key, v);
  } else if (key == "index.max_ngram") {
    index.max_ngram = static_cast<int>(parse_int(key, v, 1, 16));
  } else if (key == "index.max_literal_words") {
    index.max_literal_words = static_cast<int>(parse_int(key, v, 0, kBig));
  } else if (key == "pagerank.damping") {
    index.pagerank.damping = parse_real(key, v, 0.0, 1.0, true, true);
  } else if (key == "pagerank.tol") {
    index.pagerank.tol = parse_real(key, v, 0.0, 1.0, true);
  } else if (key == "pagerank.max_iter") {
    index.pagerank.max_iter = static_cast<int>(parse_int(key, v, 1, kBig));
  } else if (key == "match.alpha") {
    match.alpha = parse_real(key, v, 0.0, 1.0);
  } else if (key == "match.semantic_threshold") {
    match.semantic_threshold = parse_real(key, v, 0.0, 1.0);
  } else if (key == "match.top_n") {
    match.top_n = static_cast<int>(parse_int(key, v, 1, 1000));
  } else if (key == "match.fuzzy") {
    match.fuzzy = parse_bool(key, v);
  } else if (key == "match.embeddings") {
    embeddings_file = v;
  } else if (key == "build.max_combinations") {
    build.max_combinations = static_cast<int>(parse_int(key, v, 1, kBig));
  } else if (key == "build.max_graphs") {
    build.max_graphs = static_cast<int>(parse_int(key, v, 1, kBig));
  } else if (key == "build.max_path_hops") {
    build.max_path_hops = static_cast<int>(parse_int(key, v, 1, 64));
  } else if (key == "build.max_forks") {
    build.max_forks = static_cast<int>(parse_int(key, v, 1, kBig));
  } else if (key == "gen.limit") {
    gen.limit = static_cast<std::size_t>(parse_int(key, v, 0, kBig));
  } else if (key == "gen.top_n_interpretations") {
    top_n_interpretations = static_cast<int>(parse_int(key, v, 1, 1000));
  } else if (key == "gen.use_values") {
    gen.use_values = parse_bool(key, v);
  } else if (key == "exec.mode") {
    if (v != "embedded" && v != "remote") bad(key, v, "expected embedded or remote");
    exec_mode = v;
  } else if (key == "exec.endpoint") {
    endpoint = v;
  } else if (key == "exec.timeout_ms") {
    timeout_ms = static_cast<int>(parse_int(key, v, 1, kBig));
  } else if (key == "rules.file") {
    rules_file = v;
  } else if (key == "rank.ablation") {
    ablation = parse_bool(key, v);
  } else if (key == "artifacts.dir") {
    if (v.empty()) bad(key, v, "empty path");
    artifacts_dir = v;
  } else if (key == "port") {
    port = static_cast<int>(parse_int(key, v, 0, 65535));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::map<std::string, std::string> EngineConfig::effective() const {
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  return {
      {"artifacts.dir", artifacts_dir},
      {"build.max_combinations", std::to_string(build.max_combinations)},
      {"build.max_forks", std::to_string(build.max_forks)},
      {"build.max_graphs", std::to_string(build.max_graphs)},
      {"build.max_path_hops", std::to_string(build.max_path_hops)},
      {"exec.endpoint", endpoint},
      {"exec.mode", exec_mode},
      {"exec.timeout_ms", std::to_string(timeout_ms)},
      {"gen.limit", std::to_string(gen.limit)},
      {"gen.top_n_interpretations", std::to_string(top_n_interpretations)},
      {"gen.use_values", b(gen.use_values)},
      {"index.max_literal_words", std::to_string(index.max_literal_words)},
      {"index.max_ngram", std::to_string(index.max_ngram)},
      {"index.properties", index.properties.empty() ? "*" : text::join(index.properties, ",")},
      {"index.uri_fragments", b(index.uri_fragments)},
      {"match.alpha", render_real(match.alpha)},
      {"match.embeddings", embeddings_file},
      {"match.fuzzy", b(match.fuzzy)},
      {"match.semantic_threshold", render_real(match.semantic_threshold)},
      {"match.top_n", std::to_string(match.top_n)},
      {"pagerank.damping", render_real(index.pagerank.damping)},
      {"pagerank.max_iter", std::to_string(index.pagerank.max_iter)},
      {"pagerank.tol", render_real(index.pagerank.tol)},
      {"port", std::to_string(port)},
      {"rank.ablation", b(ablation)},
      {"rules.file", rules_file},
  };
}

MatcherConfig EngineConfig::matcher() const {
  MatcherConfig m = match;
  m.max_ngram = index.max_ngram;
  m.ablation = ablation;
  return m;
}

BuildConfig EngineConfig::builder() const {
  BuildConfig b = build;
  b.ablation = ablation;
  return b;
}

void apply_config_text(EngineConfig& config, std::string_view text_in) {
  std::istringstream in{std::string(text_in)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.starts_with('#')) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    config.set(trim(std::string_view(t).substr(0, eq)), std::string_view(t).substr(eq + 1));
  }
}

void apply_config_file(EngineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str());
}

void apply_environment(EngineConfig& config,
                       const std::function<std::optional<std::string>(const std::string&)>& getenv) {
  for (const auto& key : config_keys())
    if (const auto v = getenv(env_name(key))) config.set(key, *v);
}

void apply_environment(EngineConfig& config) {
  apply_environment(config, [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  });
}

}  // namespace soda
