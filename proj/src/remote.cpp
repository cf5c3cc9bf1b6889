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

#include "soda/remote.hpp"

#include <httplib.h>

#include <json.hpp>

namespace soda {

using nlohmann::json;

namespace {

struct EndpointUrl {
  std::string scheme_host_port;
  std::string path;
};

EndpointUrl split_url(const std::string& url) {
  if (!url.starts_with("http://")) throw TransportError(url, 0, "only http:// endpoints are supported");
  const auto path_pos = url.find('/', 7);
  if (path_pos == std::string::npos) return {url, "/"};
  return {url.substr(0, path_pos), url.substr(path_pos)};
}

Atom atom_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  std::string value = j.at("value").get<std::string>();
  if (type == "uri") return Atom::iri(std::move(value));
  if (type == "bnode") return Atom::blank(std::move(value));
  if (type == "literal" || type == "typed-literal") {
    std::string lang = j.contains("xml:lang") ? j["xml:lang"].get<std::string>() : std::string{};
    std::string dt = j.contains("datatype") ? j["datatype"].get<std::string>() : std::string{};
    if (!lang.empty()) dt.clear();
    return Atom::literal(std::move(value), std::move(dt), std::move(lang));
  }
  throw std::invalid_argument("unknown binding type '" + type + "'");
}

json atom_to_json(const Atom& a) {
  json j;
  switch (a.kind) {
    case Atom::Kind::IRI: j["type"] = "uri"; break;
    case Atom::Kind::Blank: j["type"] = "bnode"; break;
    case Atom::Kind::Literal:
      j["type"] = "literal";
      if (!a.lang.empty()) j["xml:lang"] = a.lang;
      if (!a.datatype.empty()) j["datatype"] = a.datatype;
      break;
  }
  j["value"] = a.value;
  return j;
}

}  // namespace

BindingTable parse_sparql_results_json(std::string_view body) {
  const json doc = json::parse(body);
  BindingTable table;
  for (const auto& v : doc.at("head").at("vars")) table.header.push_back(v.get<std::string>());
  for (const auto& b : doc.at("results").at("bindings")) {
    std::vector<std::optional<Atom>> row;
    row.reserve(table.header.size());
    for (const auto& var : table.header) {
      if (b.contains(var)) {
        row.emplace_back(atom_from_json(b.at(var)));
      } else {
        row.emplace_back(std::nullopt);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string to_sparql_results_json(const BindingTable& table) {
  json doc;
  doc["head"]["vars"] = table.header;
  json bindings = json::array();
  for (const auto& row : table.rows) {
    json b = json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i)
      if (row[i]) b[table.header[i]] = atom_to_json(*row[i]);
    bindings.push_back(std::move(b));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump();
}

BindingTable remote_query(const std::string& endpoint, const std::string& sparql,
                          std::chrono::milliseconds timeout) {
  const EndpointUrl url = split_url(endpoint);
  httplib::Client client(url.scheme_host_port);
  const auto secs = static_cast<time_t>(timeout.count() / 1000);
  const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  const httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
  const httplib::Params params = {{"query", sparql}};
  const auto started = std::chrono::steady_clock::now();
  const auto res = client.Post(url.path, headers, params);
  if (!res) {
    const httplib::Error err = res.error();
    // A read that stalls past the deadline surfaces as Error::Read.
    const bool deadline_passed = std::chrono::steady_clock::now() - started >= timeout;
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && deadline_passed))
      throw TimeoutError(endpoint);
    throw TransportError(endpoint, 0, httplib::to_string(err));
  }
  if (res->status != 200) throw TransportError(endpoint, res->status, "unexpected status");
  try {
    return parse_sparql_results_json(res->body);
  } catch (const std::exception& e) {
    throw TransportError(endpoint, res->status, std::string("malformed results: ") + e.what());
  }
}

}  // namespace soda
