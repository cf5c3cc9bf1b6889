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

#include <json.hpp>

#include <map>
#include <string>

#include "soda/engine.hpp"
#include "soda/eval.hpp"

namespace soda {

/// {"type": "uri"|"literal"|"bnode", "value", optional "datatype", "xml:lang"}.
nlohmann::json atom_json(const Atom& a);
nlohmann::json candidate_json(const CandidateMatch& c);
nlohmann::json interpretation_json(const Interpretation& it);
/// The body of a successful POST /api/ask.
nlohmann::json answer_json(const Answer& a);
nlohmann::json schema_json(const SchemaGraph& g);
nlohmann::json config_json(const std::map<std::string, std::string>& effective);
nlohmann::json report_json(const EvalReport& r);
nlohmann::json error_json(const std::string& code, const std::string& message);

/// Human-readable rendering of an answer for the terminal.
std::string format_answer_table(const Answer& a);

}  // namespace soda
