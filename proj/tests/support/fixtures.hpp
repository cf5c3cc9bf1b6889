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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "soda/engine.hpp"

namespace fx {

inline const std::string kDrugbank = "http://example.org/drugbank/";
inline const std::string kSider = "http://example.org/sider/";
inline const std::string kDiseasome = "http://example.org/diseasome/";
inline const std::string kBgee = "http://example.org/bgee/";
inline const std::string kOrthology = "http://example.org/orthology/";

inline const std::string kBrcaQuestion = "What are the drugs for diseases associated with the BRCA genes?";
inline const std::string kAsthmaQuestion = "Which drugs are used for asthma?";

std::filesystem::path fixture(const std::string& name);
std::filesystem::path response_schema(const std::string& name);
std::string read_file(const std::filesystem::path& path);

/// Parsed once per process.
const soda::TripleSet& qald_store();
const soda::TripleSet& cordis_store();

/// In-memory sessions over the fixtures with default settings.
std::shared_ptr<const soda::EngineSession> qald_session();
std::shared_ptr<const soda::EngineSession> cordis_session();
/// micro-qald with the ortholog rule file configured.
std::shared_ptr<const soda::EngineSession> qald_session_with_rules();

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

/// Runs the soda binary with extra environment variables set.
CliRun run_cli(const std::vector<std::string>& args, const std::map<std::string, std::string>& env = {});

}  // namespace fx
