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

#include <atomic>
#include <memory>
#include <string>

#include "soda/engine.hpp"

namespace httplib {
class Server;
}

namespace soda {

/// JSON-over-HTTP front end of one session. The session may be attached after
/// construction; until then every route except /api/config answers 503.
class Service {
 public:
  explicit Service(std::shared_ptr<const EngineSession> session = nullptr, EngineConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  void attach(std::shared_ptr<const EngineSession> session);

  /// Binds to host:port (port 0 picks a free port) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();

 private:
  void routes();
  std::shared_ptr<const EngineSession> session() const;

  std::unique_ptr<httplib::Server> server_;
  std::shared_ptr<const EngineSession> session_;
  EngineConfig config_;
  std::atomic<unsigned> error_counter_{0};
};

}  // namespace soda
