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


#include "armordb/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "armordb/ofn.hpp"
#include "armordb/reasoner.hpp"

namespace armordb {
namespace {

constexpr std::size_t kMaxLine = 8u << 20;
constexpr int kPollMillis = 100;

std::string trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return std::string(s);
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

PreloadEntry parse_preload(const std::string& value) {
  auto eq = value.find('=');
  if (eq == std::string::npos) throw ConfigError("preload: expected reference=path, got '" + value + "'");
  PreloadEntry e{trim(value.substr(0, eq)), trim(value.substr(eq + 1))};
  if (!EntityName::is_identifier(e.reference) || e.path.empty()) {
    throw ConfigError("preload: expected reference=path, got '" + value + "'");
  }
  return e;
}

void set_key(ServerConfig& c, const std::string& key, const std::string& value) {
  if (key == "listen_address") {
    c.listen_address = value;
  } else if (key == "port") {
    unsigned v = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size() || v > 65535) {
      throw ConfigError("port: invalid value '" + value + "'");
    }
    c.port = static_cast<std::uint16_t>(v);
  } else if (key == "buffered_manipulation") {
    c.default_flags.buffered_manipulation = parse_flag(key, value);
  } else if (key == "continuous_reasoner_update") {
    c.default_flags.continuous_reasoner_update = parse_flag(key, value);
  } else if (key == "mandatory_mount") {
    c.mandatory_mount = parse_flag(key, value);
  } else if (key == "reasoner") {
    c.reasoner = value;
  } else if (key == "procedures") {
    c.procedures_path = value;
  } else if (key == "preload") {
    c.preload.push_back(parse_preload(value));
  } else if (key == "log_level") {
    c.log_level = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

constexpr const char* kKeys[] = {"listen_address",  "port",     "buffered_manipulation",
                                 "continuous_reasoner_update", "mandatory_mount", "reasoner",
                                 "procedures",      "log_level"};

const ServerConfig& validated(const ServerConfig& c) {
  if (c.reasoner != kBuiltinReasoner) {
    throw ConfigError("unknown reasoner '" + c.reasoner + "' (only " + std::string(kBuiltinReasoner) +
                      " is available)");
  }
  if (spdlog::level::from_str(c.log_level) == spdlog::level::off && c.log_level != "off") {
    throw ConfigError("unknown log_level '" + c.log_level + "'");
  }
  return c;
}

ProcedureRegistry load_registry(const ServerConfig& c) {
  if (c.procedures_path.empty()) return {};
  try {
    return ProcedureRegistry::load(c.procedures_path);
  } catch (const ProcedureFileError& e) {
    throw ConfigError(c.procedures_path + ": " + e.what());
  }
}

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

ServerConfig parse_config(std::string_view text) {
  ServerConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set_key(c, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

ServerConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_environment(ServerConfig& config, const EnvLookup& getenv) {
  for (const char* key : kKeys) {
    std::string var = "ARMORDB_";
    for (const char* p = key; *p; ++p) var += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
    if (const char* value = getenv(var.c_str())) {
      try {
        set_key(config, key, trim(value));
      } catch (const ConfigError& e) {
        throw ConfigError(var + ": " + e.what());
      }
    }
  }
  if (const char* value = getenv("ARMORDB_PRELOAD")) {
    config.preload.clear();
    std::istringstream in{std::string(value)};
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!trim(item).empty()) config.preload.push_back(parse_preload(item));
    }
  }
}

Server::Server(ServerConfig config)
    : config_(validated(config)),
      refs_(ReferenceMapOptions{config_.default_flags, config_.mandatory_mount}),
      dispatcher_(refs_, load_registry(config_)) {
  spdlog::set_level(spdlog::level::from_str(config_.log_level));
  for (const PreloadEntry& e : config_.preload) {
    try {
      ofn::DocumentModel m = ofn::read_file(e.path);
      std::vector<Change> changes;
      for (const Axiom& a : m.axioms) changes.push_back(Change{ChangeOp::kAdd, a});
      refs_.create(e.reference)->load("armordb", changes, m.prefixes);
      spdlog::info("preloaded '{}' from {} ({} axioms)", e.reference, e.path, changes.size());
    } catch (const Error& err) {
      throw ConfigError("preload " + e.reference + "=" + e.path + ": " + err.what());
    }
  }
}

Server::~Server() {
  stop();
  reap(true);
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void Server::bind() {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(config_.port);
  if (::inet_pton(AF_INET, config_.listen_address.c_str(), &addr.sin_addr) != 1) {
    throw BindError("invalid listen address '" + config_.listen_address + "'");
  }
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listen_fd_ < 0) throw BindError(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 64) != 0) {
    std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw BindError("cannot listen on " + config_.listen_address + ":" + std::to_string(config_.port) + ": " +
                    why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  spdlog::info("listening on {}:{}", config_.listen_address, port_);
}

void Server::stop() { stopping_ = true; }

void Server::run() {
  if (listen_fd_ < 0) bind();
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    int ready = ::poll(&p, 1, kPollMillis);
    reap(false);
    if (ready <= 0) continue;
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    std::lock_guard lock(conns_mu_);
    Connection& conn = conns_.emplace_back();
    conn.fd = fd;
    conn.thread = std::thread([this, &conn] { serve_connection(conn); });
  }
  ::close(listen_fd_);
  listen_fd_ = -1;
  reap(true);
  spdlog::info("server stopped");
}

void Server::reap(bool all) {
  std::list<Connection> finished;
  {
    std::lock_guard lock(conns_mu_);
    for (auto it = conns_.begin(); it != conns_.end();) {
      auto next = std::next(it);
      if (all || it->done) finished.splice(finished.end(), conns_, it);
      it = next;
    }
  }
  for (Connection& c : finished) {
    if (c.thread.joinable()) c.thread.join();
  }
}

void Server::serve_connection(Connection& conn) {
  spdlog::debug("connection {} opened", conn.fd);
  std::string buffer;
  bool discarding = false;
  char chunk[64 * 1024];
  bool open = true;
  while (open) {
    // Answer every complete line before looking at the stop flag, so a
    // request that has fully arrived is always answered.
    std::size_t start = 0;
    for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
      std::string_view line(buffer.data() + start, nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      std::string reply;
      if (discarding) {
        reply = protocol::encode(protocol::CommandResponse::failure(ErrorCode::kMalformedRequest, "line too long"));
        discarding = false;
      } else {
        reply = dispatcher_.handle_line(line);
      }
      reply += '\n';
      if (!send_all(conn.fd, reply)) {
        open = false;
        break;
      }
    }
    buffer.erase(0, start);
    if (buffer.size() > kMaxLine) {
      buffer.clear();
      discarding = true;
    }
    if (!open || stopping_) break;

    pollfd p{conn.fd, POLLIN, 0};
    int ready = ::poll(&p, 1, kPollMillis);
    if (ready == 0 || (ready < 0 && errno == EINTR)) continue;
    if (ready < 0) break;
    ssize_t n = ::recv(conn.fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    if (!discarding) buffer.append(chunk, static_cast<std::size_t>(n));
    else if (auto nl = std::string_view(chunk, static_cast<std::size_t>(n)).find('\n'); nl != std::string_view::npos) {
      buffer.assign(chunk + nl, static_cast<std::size_t>(n) - nl);
    }
  }
  ::close(conn.fd);
  spdlog::debug("connection {} closed", conn.fd);
  conn.done = true;
}

}  // namespace armordb
