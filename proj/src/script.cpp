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


#include "armordb/script.hpp"

#include <charconv>
#include <sstream>

#include "armordb/model.hpp"

namespace armordb {
namespace {

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

Expectation parse_expect(std::string_view body, int line) {
  Expectation e;
  std::istringstream in{std::string(body)};
  std::string clause;
  while (in >> clause) {
    auto eq = clause.find('=');
    if (eq == std::string::npos) throw ScriptError(line, "expected key=value in #expect, got '" + clause + "'");
    std::string key = clause.substr(0, eq);
    std::string value = clause.substr(eq + 1);
    if (key == "code") {
      int v = -1;
      auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || end != value.data() + value.size() || !is_registered_code(v)) {
        throw ScriptError(line, "unknown error code '" + value + "'");
      }
      e.code = static_cast<ErrorCode>(v);
    } else if (key == "names") {
      std::vector<std::string> names;
      std::istringstream list(value);
      std::string item;
      while (std::getline(list, item, ',')) {
        try {
          names.push_back(EntityName::parse(item).str());
        } catch (const Error&) {
          throw ScriptError(line, "invalid name '" + item + "' in #expect");
        }
      }
      e.names = std::move(names);
    } else if (key == "consistent" || key == "applied") {
      if (value != "true" && value != "false") {
        throw ScriptError(line, key + " must be true or false, got '" + value + "'");
      }
      (key == "consistent" ? e.consistent : e.applied) = value == "true";
    } else {
      throw ScriptError(line, "unknown #expect clause '" + key + "'");
    }
  }
  if (!e.code && !e.names && !e.consistent && !e.applied) throw ScriptError(line, "empty #expect");
  return e;
}

std::string join(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out + "]";
}

}  // namespace

std::string Expectation::check(const protocol::CommandResponse& response) const {
  if (code && response.error_code != *code) {
    return "expected code " + std::to_string(static_cast<int>(*code)) + ", got " +
           std::to_string(static_cast<int>(response.error_code));
  }
  if (names && response.queried_names != *names) {
    return "expected names " + join(*names) + ", got " + join(response.queried_names);
  }
  auto flag = [](bool b) { return b ? "true" : "false"; };
  if (consistent && response.consistent != *consistent) {
    return std::string("expected consistent=") + flag(*consistent) + ", got " + flag(response.consistent);
  }
  if (applied && response.applied != *applied) {
    return std::string("expected applied=") + flag(*applied) + ", got " + flag(response.applied);
  }
  return {};
}

std::vector<ScriptLine> parse_script(std::string_view text, const std::string& client,
                                     const std::string& reference) {
  std::vector<ScriptLine> out;
  bool have_command = false;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++lineno;
    if (line.empty()) continue;
    if (line.starts_with("#expect")) {
      if (!have_command) throw ScriptError(lineno, "#expect before any command");
      out.push_back(ScriptLine{lineno, parse_expect(line.substr(7), lineno)});
      continue;
    }
    if (line.front() == '#') continue;
    try {
      protocol::CommandRequest r = protocol::parse_command_text(line);
      r.client_name = client;
      r.reference_name = reference;
      out.push_back(ScriptLine{lineno, std::move(r)});
      have_command = true;
    } catch (const Error& e) {
      throw ScriptError(lineno, e.what());
    }
  }
  return out;
}

}  // namespace armordb
