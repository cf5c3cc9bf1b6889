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

// soda: build artifacts, ask questions, run benchmarks and serve the HTTP API.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "soda/engine.hpp"
#include "soda/eval.hpp"
#include "soda/json_io.hpp"
#include "soda/service.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kIo = 2, kNoInterpretation = 3, kConfig = 4 };

soda::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

struct Common {
  std::string config_file;
  std::vector<std::string> overrides;  // key=value
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_file, "config file (default: $SODA_CONFIG)");
  cmd->add_option("--set", c.overrides, "override one config key, key=value")->take_all();
}

// defaults < config file < SODA_* environment < flags
soda::EngineConfig load_config(const Common& c) {
  soda::EngineConfig config;
  std::string file = c.config_file;
  if (file.empty())
    if (const char* env = std::getenv("SODA_CONFIG")) file = env;
  if (!file.empty()) soda::apply_config_file(config, file);
  soda::apply_environment(config);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw soda::ConfigError("--set expects key=value, got " + kv);
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return config;
}

int run_index(const Common& common, const std::string& input, const std::string& out, bool lenient,
              std::int64_t built) {
  soda::EngineConfig config = load_config(common);
  soda::NTriplesReport nt;
  const soda::TripleSet store = soda::read_ntriples_file(input, lenient, &nt);
  if (store.size() == 0) std::cerr << "warning: " << input << " contains no triples\n";
  if (nt.bad_lines) std::cerr << "warning: skipped " << nt.bad_lines << " malformed lines\n";
  const std::string dir = out.empty() ? config.artifacts_dir : out;
  const soda::IndexReport r = soda::write_artifacts(store, config, dir, built);
  std::cout << "triples " << r.triples << "\nentries " << r.entries << "\nclasses " << r.classes << "\nedges "
            << r.edges << "\nuntyped " << r.untyped.size() << "\npagerank_iterations " << r.pagerank_iterations
            << "\nartifacts " << dir << "\n";
  return kOk;
}

int run_ask(const Common& common, const std::string& question, int top, const std::string& format,
            const std::string& artifacts) {
  soda::EngineConfig config = load_config(common);
  if (!artifacts.empty()) config.artifacts_dir = artifacts;
  const auto session = soda::EngineSession::open(config);
  soda::AnswerOptions options;
  if (top > 0) options.top_n = top;
  try {
    const soda::Answer a = session->answer(question, options);
    if (format == "json") {
      std::cout << soda::answer_json(a).dump(2) << "\n";
    } else {
      std::cout << soda::format_answer_table(a);
    }
  } catch (const soda::UnmatchedQuestionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (format == "json") {
      nlohmann::json j = soda::error_json("unmatched", e.what());
      j["skipped"] = e.skipped();
      std::cout << j.dump(2) << "\n";
    }
    return kNoInterpretation;
  }
  return kOk;
}

int run_eval(const Common& common, const std::string& bench, bool ablation, bool as_json,
             const std::string& artifacts) {
  soda::EngineConfig config = load_config(common);
  if (!artifacts.empty()) config.artifacts_dir = artifacts;
  const auto items = soda::load_benchmark(bench);
  const auto session = soda::EngineSession::open(config);
  const soda::EvalReport report = soda::run_benchmark(items, *session, ablation || config.ablation);
  if (as_json) {
    std::cout << soda::report_json(report).dump(2) << "\n";
  } else {
    std::cout << soda::format_report(report);
  }
  return kOk;
}

int run_serve(const Common& common, int port, const std::string& host, const std::string& artifacts) {
  soda::EngineConfig config = load_config(common);
  if (!artifacts.empty()) config.artifacts_dir = artifacts;
  if (port >= 0) config.port = port;
  soda::Service service(nullptr, config);
  const int bound = service.bind(host, config.port);
  if (bound < 0) throw soda::IoError("cannot bind " + host + ":" + std::to_string(config.port));
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread server([&] { service.listen(); });
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  try {
    service.attach(soda::EngineSession::open(config));
    std::cerr << "dataset loaded from " << config.artifacts_dir << "\n";
  } catch (...) {
    service.stop();
    server.join();
    g_service = nullptr;
    throw;
  }
  server.join();
  g_service = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Question answering over RDF knowledge graphs"};
  app.require_subcommand(1);

  Common common;

  auto* index = app.add_subcommand("index", "build index, schema and diagnostics from an N-Triples file");
  std::string input, out;
  bool lenient = false;
  std::int64_t built = 0;
  index->add_option("data", input, "N-Triples file")->required();
  index->add_option("--out", out, "artifact directory (default: artifacts.dir)");
  index->add_flag("--lenient", lenient, "skip malformed lines");
  index->add_option("--built", built, "build timestamp recorded in the index");
  add_common(index, common);

  auto* ask = app.add_subcommand("ask", "answer a question");
  std::string question, format = "table", artifacts;
  int top = 0;
  ask->add_option("question", question)->required();
  ask->add_option("--top", top, "number of interpretations")->check(CLI::PositiveNumber);
  ask->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
  ask->add_option("--artifacts", artifacts, "artifact directory");
  add_common(ask, common);

  auto* eval = app.add_subcommand("eval", "run a JSON-lines benchmark");
  std::string bench;
  bool ablation = false, as_json = false;
  eval->add_option("benchmark", bench)->required();
  eval->add_flag("--ablation", ablation, "string similarity only, smallest graph first");
  eval->add_flag("--json", as_json, "print the report as JSON");
  eval->add_option("--artifacts", artifacts, "artifact directory");
  add_common(eval, common);

  auto* serve = app.add_subcommand("serve", "serve the JSON API");
  int port = -1;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "port (default: port key, $SODA_PORT)");
  serve->add_option("--host", host);
  serve->add_option("--artifacts", artifacts, "artifact directory");
  add_common(serve, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*index) return run_index(common, input, out, lenient, built);
    if (*ask) return run_ask(common, question, top, format, artifacts);
    if (*eval) return run_eval(common, bench, ablation, as_json, artifacts);
    if (*serve) return run_serve(common, port, host, artifacts);
  } catch (const soda::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const soda::BuildError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoInterpretation;
  } catch (const soda::UnmatchedQuestionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoInterpretation;
  } catch (const soda::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const soda::LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const soda::BenchmarkError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const soda::SessionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
