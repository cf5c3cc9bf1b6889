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

#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>

namespace fx {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(SODA_FIXTURES_DIR) / name; }

std::filesystem::path response_schema(const std::string& name) {
  return std::filesystem::path(SODA_SCHEMAS_DIR) / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const soda::TripleSet& qald_store() {
  static const soda::TripleSet store = soda::read_ntriples_file(fixture("micro-qald.nt"));
  return store;
}

const soda::TripleSet& cordis_store() {
  static const soda::TripleSet store = soda::read_ntriples_file(fixture("micro-cordis.nt"));
  return store;
}

std::shared_ptr<const soda::EngineSession> qald_session() {
  static const auto session = soda::EngineSession::build(qald_store(), {});
  return session;
}

std::shared_ptr<const soda::EngineSession> cordis_session() {
  static const auto session = soda::EngineSession::build(cordis_store(), {});
  return session;
}

std::shared_ptr<const soda::EngineSession> qald_session_with_rules() {
  static const auto session = [] {
    soda::EngineConfig config;
    config.rules_file = fixture("orthologs.rules").string();
    return soda::EngineSession::build(qald_store(), config);
  }();
  return session;
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("soda-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (const char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

}  // namespace

CliRun run_cli(const std::vector<std::string>& args, const std::map<std::string, std::string>& env) {
  TempDir dir;
  std::string cmd = "env";
  for (const auto& [k, v] : env) cmd += " " + quote(k + "=" + v);
  cmd += " " + quote(SODA_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote((dir.path() / "out").string()) + " 2>" + quote((dir.path() / "err").string());
  const int raw = std::system(cmd.c_str());
  CliRun run;
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  run.out = read_file(dir.path() / "out");
  run.err = read_file(dir.path() / "err");
  return run;
}

}  // namespace fx
