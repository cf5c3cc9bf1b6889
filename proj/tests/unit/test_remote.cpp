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

#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "soda/remote.hpp"

using namespace soda;

namespace {

// A local endpoint answering POST /sparql with a fixed status and body.
class MockEndpoint {
 public:
  MockEndpoint(int status, std::string body, std::chrono::milliseconds delay = {}) {
    server_.Post("/sparql", [=, this](const httplib::Request& req, httplib::Response& res) {
      last_query_ = req.get_param_value("query");
      if (delay.count()) std::this_thread::sleep_for(delay);
      res.status = status;
      res.set_content(body, "application/sparql-results+json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockEndpoint() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/sparql"; }
  const std::string& last_query() const { return last_query_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::string last_query_;
};

const char* kThreeRows = R"({"head":{"vars":["drug","name"]},"results":{"bindings":[
  {"drug":{"type":"uri","value":"http://example.org/d/1"},"name":{"type":"literal","value":"Aspirin","xml:lang":"en"}},
  {"drug":{"type":"uri","value":"http://example.org/d/2"},"name":{"type":"literal","value":"7","datatype":"http://www.w3.org/2001/XMLSchema#integer"}},
  {"drug":{"type":"bnode","value":"b0"}}
]}})";

}  // namespace

TEST_SUITE("kg-store") {
  TEST_CASE("remote: zero bindings keep the header") {
    MockEndpoint ep(200, R"({"head":{"vars":["a","b"]},"results":{"bindings":[]}})");
    const BindingTable t = remote_query(ep.url(), "SELECT ?a ?b WHERE { ?a ?p ?b }");
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    CHECK(t.rows.empty());
    CHECK(ep.last_query() == "SELECT ?a ?b WHERE { ?a ?p ?b }");
  }

  TEST_CASE("remote: two variables and three results") {
    MockEndpoint ep(200, kThreeRows);
    const BindingTable t = remote_query(ep.url(), "SELECT ?drug ?name WHERE { ?drug ?p ?name }");
    REQUIRE(t.rows.size() == 3);
    REQUIRE(t.header.size() == 2);
    CHECK(*t.rows[0][0] == Atom::iri("http://example.org/d/1"));
    CHECK(t.rows[0][1]->lang == "en");
    CHECK(t.rows[1][1]->numeric() == doctest::Approx(7.0));
    CHECK(t.rows[2][0]->is_blank());
    CHECK_FALSE(t.rows[2][1].has_value());
  }

  TEST_CASE("remote: HTTP 500 is a transport error with endpoint and status") {
    MockEndpoint ep(500, "boom");
    try {
      remote_query(ep.url(), "SELECT ?a WHERE { ?a ?p ?o }");
      FAIL("expected TransportError");
    } catch (const TransportError& e) {
      CHECK(e.status() == 500);
      CHECK(e.endpoint() == ep.url());
    }
  }

  TEST_CASE("remote: malformed JSON is a transport error") {
    MockEndpoint ep(200, "{not json");
    CHECK_THROWS_AS(remote_query(ep.url(), "SELECT ?a WHERE { ?a ?p ?o }"), TransportError);
  }

  TEST_CASE("remote: a slow endpoint times out") {
    MockEndpoint ep(200, kThreeRows, std::chrono::milliseconds(1500));
    CHECK_THROWS_AS(remote_query(ep.url(), "SELECT ?a WHERE { ?a ?p ?o }", std::chrono::milliseconds(200)),
                    TimeoutError);
  }

  TEST_CASE("remote: unreachable endpoint is a transport error") {
    CHECK_THROWS_AS(remote_query("http://127.0.0.1:1/sparql", "SELECT ?a WHERE { ?a ?p ?o }",
                                 std::chrono::milliseconds(500)),
                    TransportError);
  }

  TEST_CASE("results JSON round-trips") {
    const BindingTable t = parse_sparql_results_json(kThreeRows);
    CHECK(parse_sparql_results_json(to_sparql_results_json(t)) == t);
  }
}
