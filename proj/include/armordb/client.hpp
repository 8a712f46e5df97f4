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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "armordb/protocol.hpp"

namespace armordb {

class ConnectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Address {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7411;
};

/// "host:port", "host" or ":port". Throws std::invalid_argument.
Address parse_address(std::string_view text);

/// Blocking line client. Not thread-safe; use one per thread.
class Client {
 public:
  /// Throws ConnectionError.
  static Client connect(const Address& address);

  Client(Client&& other) noexcept;
  Client& operator=(Client&& other) noexcept;
  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;
  ~Client();

  /// Sends one line (a newline is appended) and returns the reply line
  /// without its newline. Throws ConnectionError.
  std::string call_line(std::string_view line);
  /// Pipelining: send several lines, then read the replies in order.
  void send_line(std::string_view line);
  std::string read_line();
  protocol::CommandResponse call(const protocol::CommandRequest& request);

 private:
  explicit Client(int fd) : fd_(fd) {}

  int fd_ = -1;
  std::string pending_;
};

}  // namespace armordb
