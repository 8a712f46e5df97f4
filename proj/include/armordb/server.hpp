// Copyright 2026 The armordb Authors
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
#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "armordb/dispatcher.hpp"
#include "armordb/reference_map.hpp"

namespace armordb {

struct PreloadEntry {
  std::string reference;
  std::string path;
};

struct ServerConfig {
  std::string listen_address = "127.0.0.1";
  std::uint16_t port = 7411;
  RefFlags default_flags;
  bool mandatory_mount = false;
  std::string reasoner = "builtin-el";
  std::string procedures_path;
  std::vector<PreloadEntry> preload;
  std::string log_level = "info";
};

/// Startup problems: bad config, unknown reasoner, unreadable procedure
/// or preload files. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The listener could not be bound. Maps to exit code 2.
class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `key = value` lines; `#` starts a comment. `preload` may be
/// repeated and takes `reference=path`.
ServerConfig parse_config(std::string_view text);
ServerConfig load_config(const std::string& path);

using EnvLookup = std::function<const char*(const char*)>;

/// Applies ARMORDB_<KEY> overrides, e.g. ARMORDB_PORT. ARMORDB_PRELOAD
/// takes a comma-separated list and replaces the file's entries.
void apply_environment(ServerConfig& config, const EnvLookup& getenv);

/// TCP front end: one thread per connection, one response line per
/// request line, in order.
class Server {
 public:
  /// Validates the config, loads procedures and preloads references.
  explicit Server(ServerConfig config);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and listens. Port 0 picks an ephemeral port.
  void bind();
  std::uint16_t port() const { return port_; }

  /// Accepts connections until stop(); then waits for every connection
  /// to finish its in-flight request.
  void run();
  /// Safe from any thread, including signal-handling threads.
  void stop();

  ReferenceMap& references() { return refs_; }
  const Dispatcher& dispatcher() const { return dispatcher_; }

 private:
  struct Connection {
    int fd = -1;
    std::thread thread;
    std::atomic<bool> done{false};
  };

  void serve_connection(Connection& conn);
  void reap(bool all);

  ServerConfig config_;
  ReferenceMap refs_;
  Dispatcher dispatcher_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex conns_mu_;
  std::list<Connection> conns_;
};

}  // namespace armordb
