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


// armordb-cli: sends one command, a script, or stdin to an armordb server.
//
// Exit codes: 0 all responses succeeded (or failed as expected),
// 3 connection failure, 4 expectation failure or unexpected error
// response, 5 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "armordb/client.hpp"
#include "armordb/model.hpp"
#include "armordb/script.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConnection = 3;
constexpr int kExitExpectation = 4;
constexpr int kExitUsage = 5;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"armordb command-line client"};
  std::string client, reference, addr = "127.0.0.1:7411", script_path, record_path;
  std::vector<std::string> words;
  bool porcelain = false;
  app.add_option("--client", client, "client name sent with every request")->required();
  app.add_option("--ref", reference, "target reference name")->required();
  app.add_option("--addr", addr, "server address host:port")->capture_default_str();
  app.add_option("--script", script_path, "script file to replay");
  app.add_flag("--porcelain", porcelain, "print wire-format responses");
  app.add_option("--record", record_path, "write request/response lines to a transcript file");
  app.add_option("command", words, "command text, e.g. ADD CLASS Sphere");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (!armordb::EntityName::is_identifier(client) || !armordb::EntityName::is_identifier(reference)) {
    std::cerr << "armordb-cli: --client and --ref must be identifiers\n";
    return kExitUsage;
  }
  if (!words.empty() && !script_path.empty()) {
    std::cerr << "armordb-cli: give either a command or --script, not both\n";
    return kExitUsage;
  }

  std::string text;
  if (!words.empty()) {
    for (const auto& w : words) (text += w) += ' ';
  } else if (!script_path.empty()) {
    if (!read_file(script_path, text)) {
      std::cerr << "armordb-cli: cannot read " << script_path << "\n";
      return kExitUsage;
    }
  } else {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  }

  std::vector<armordb::ScriptLine> script;
  armordb::Address address;
  try {
    script = armordb::parse_script(text, client, reference);
    address = armordb::parse_address(addr);
  } catch (const std::exception& e) {
    std::cerr << "armordb-cli: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ofstream record;
  if (!record_path.empty()) {
    record.open(record_path, std::ios::binary | std::ios::trunc);
    if (!record) {
      std::cerr << "armordb-cli: cannot write " << record_path << "\n";
      return kExitUsage;
    }
  }

  int status = kExitOk;
  try {
    armordb::Client conn = armordb::Client::connect(address);
    armordb::protocol::CommandResponse last;
    std::string unexpected;  // an error response not yet covered by #expect code
    auto settle = [&] {
      if (unexpected.empty()) return;
      std::cerr << unexpected << "\n";
      status = kExitExpectation;
      unexpected.clear();
    };
    for (const armordb::ScriptLine& line : script) {
      if (const auto* req = std::get_if<armordb::protocol::CommandRequest>(&line.item)) {
        settle();
        std::string request = armordb::protocol::encode(*req);
        std::string reply = conn.call_line(request);
        if (record) record << request << '\n' << reply << '\n';
        last = armordb::protocol::decode_response(reply);
        std::cout << (porcelain ? reply : armordb::protocol::format_human(last)) << '\n';
        if (!last.success) {
          unexpected = "armordb-cli: line " + std::to_string(line.line) + ": error response " +
                       std::to_string(static_cast<int>(last.error_code));
        }
        continue;
      }
      const auto& expect = std::get<armordb::Expectation>(line.item);
      if (std::string why = expect.check(last); !why.empty()) {
        std::cerr << "armordb-cli: line " << line.line << ": expectation failed: " << why << "\n";
        status = kExitExpectation;
      } else if (expect.code) {
        unexpected.clear();
      }
    }
    settle();
  } catch (const armordb::ConnectionError& e) {
    std::cout.flush();
    std::cerr << "armordb-cli: " << e.what() << "\n";
    return kExitConnection;
  } catch (const armordb::Error& e) {
    std::cerr << "armordb-cli: bad response: " << e.what() << "\n";
    return kExitConnection;
  }
  return status;
}
