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

#include "soda/service.hpp"

#include <httplib.h>

#include <cstdio>
#include <iostream>

#include "soda/json_io.hpp"
#include "soda/text.hpp"

namespace soda {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

}  // namespace

Service::Service(std::shared_ptr<const EngineSession> session, EngineConfig config)
    : server_(std::make_unique<httplib::Server>()), session_(std::move(session)), config_(std::move(config)) {
  routes();
}

Service::~Service() { stop(); }

void Service::attach(std::shared_ptr<const EngineSession> session) { std::atomic_store(&session_, std::move(session)); }

std::shared_ptr<const EngineSession> Service::session() const { return std::atomic_load(&session_); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

void Service::routes() {
  server_->Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    const auto s = session();
    if (!s) return reply(res, 503, {{"status", "loading"}, {"dataset", nullptr}});
    reply(res, 200, {{"status", "ok"}, {"dataset", s->dataset_id()}});
  });

  server_->Get("/api/schema", [this](const httplib::Request&, httplib::Response& res) {
    const auto s = session();
    if (!s) return reply(res, 503, error_json("not_ready", "no dataset loaded"));
    reply(res, 200, schema_json(s->schema()));
  });

  server_->Get("/api/config", [this](const httplib::Request&, httplib::Response& res) {
    const auto s = session();
    reply(res, 200, config_json(s ? s->config().effective() : config_.effective()));
  });

  server_->Post("/api/ask", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      return reply(res, 400, error_json("bad_request", "request body must be a JSON object"));
    }
    if (!body.is_object() || !body.contains("question") || !body["question"].is_string())
      return reply(res, 400, error_json("bad_request", "missing question"));
    const std::string question = body["question"].get<std::string>();
    if (text::split_words(question).empty()) return reply(res, 400, error_json("bad_request", "empty question"));
    AnswerOptions options;
    if (body.contains("top_n")) {
      if (!body["top_n"].is_number_integer() || body["top_n"].get<long long>() < 1)
        return reply(res, 400, error_json("bad_request", "top_n must be a positive integer"));
      options.top_n = static_cast<int>(std::min<long long>(body["top_n"].get<long long>(), 1000));
    }
    const auto s = session();
    if (!s) return reply(res, 503, error_json("not_ready", "no dataset loaded"));
    try {
      reply(res, 200, answer_json(s->answer(question, options)));
    } catch (const UnmatchedQuestionError& e) {
      json j = error_json("unmatched", e.what());
      j["skipped"] = e.skipped();
      reply(res, 422, j);
    } catch (const BuildError& e) {
      reply(res, 422, error_json("no_interpretation", e.what()));
    } catch (const std::exception& e) {
      char id[32];
      std::snprintf(id, sizeof id, "E%06u", ++error_counter_);
      std::cerr << "error " << id << ": " << e.what() << "\n";
      json j = error_json("internal", e.what());
      j["error_id"] = id;
      reply(res, 500, j);
    }
  });
}

}  // namespace soda
