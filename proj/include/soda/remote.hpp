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

#include <chrono>
#include <string>
#include <string_view>

#include "soda/sparql.hpp"

namespace soda {

/// Network failure, non-200 status or an unreadable response body.
class TransportError : public Error {
 public:
  TransportError(std::string endpoint, int status, const std::string& what)
      : Error(endpoint + ": " + what + (status ? " (HTTP " + std::to_string(status) + ")" : "")),
        endpoint_(std::move(endpoint)),
        status_(status) {}
  const std::string& endpoint() const { return endpoint_; }
  int status() const { return status_; }

 private:
  std::string endpoint_;
  int status_;
};

class TimeoutError : public TransportError {
 public:
  explicit TimeoutError(std::string endpoint) : TransportError(std::move(endpoint), 0, "timed out") {}
};

/// Parses an application/sparql-results+json document.
BindingTable parse_sparql_results_json(std::string_view body);

/// Renders a table as application/sparql-results+json.
std::string to_sparql_results_json(const BindingTable& table);

/// POSTs the query (form parameter `query`) to an http:// endpoint and reads JSON results.
BindingTable remote_query(const std::string& endpoint, const std::string& sparql,
                          std::chrono::milliseconds timeout = std::chrono::seconds(30));

}  // namespace soda
