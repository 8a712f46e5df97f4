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


#include "armordb/procedures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "armordb/model.hpp"
#include "armordb/protocol.hpp"

namespace armordb {
namespace {

bool ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

// Calls fn(name, begin, end) for every `$name` occurrence.
template <typename F>
void for_each_param(std::string_view text, F&& fn) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '$') continue;
    std::size_t j = i + 1;
    while (j < text.size() && ident_char(text[j])) ++j;
    fn(text.substr(i + 1, j - i - 1), i, j);
    i = j - 1;
  }
}

Procedure parse_header(std::string_view line, int lineno) {
  std::string_view rest = trim(line.substr(4));
  auto open = rest.find('(');
  if (open == std::string_view::npos || rest.back() != ')') {
    throw ProcedureFileError(lineno, "expected 'proc <name>(<params>)'");
  }
  Procedure p;
  p.name = std::string(trim(rest.substr(0, open)));
  if (!EntityName::is_identifier(p.name)) {
    throw ProcedureFileError(lineno, "invalid procedure name '" + p.name + "'");
  }
  std::string_view params = rest.substr(open + 1, rest.size() - open - 2);
  std::string token;
  std::istringstream in{std::string(params)};
  while (std::getline(in, token, ',')) {
    std::string name(trim(token));
    if (name.empty()) {
      if (trim(params).empty()) break;
      throw ProcedureFileError(lineno, "empty parameter name");
    }
    if (!std::all_of(name.begin(), name.end(), ident_char) || (name[0] >= '0' && name[0] <= '9')) {
      throw ProcedureFileError(lineno, "invalid parameter name '" + name + "'");
    }
    if (std::find(p.params.begin(), p.params.end(), name) != p.params.end()) {
      throw ProcedureFileError(lineno, "duplicate parameter '" + name + "'");
    }
    p.params.push_back(name);
  }
  return p;
}

void check_step(const Procedure& p, std::string_view text, int lineno) {
  for_each_param(text, [&](std::string_view name, std::size_t, std::size_t) {
    if (std::find(p.params.begin(), p.params.end(), name) == p.params.end()) {
      throw ProcedureFileError(lineno, "undeclared parameter $" + std::string(name) + " in procedure '" +
                                           p.name + "'");
    }
  });
  protocol::CommandRequest r;
  try {
    r = protocol::parse_command_text(text);
  } catch (const Error& e) {
    throw ProcedureFileError(lineno, e.what());
  }
  if (!protocol::find_row(r.command, r.primary_spec, r.secondary_spec)) {
    throw ProcedureFileError(lineno, "not a command row: " + std::string(text));
  }
}

}  // namespace

bool is_builtin_procedure(std::string_view name) { return name == kAbstractClassProcedure; }

std::string substitute(std::string_view text, const std::vector<std::string>& params,
                       const std::vector<std::string>& values) {
  std::string out;
  std::size_t last = 0;
  for_each_param(text, [&](std::string_view name, std::size_t begin, std::size_t end) {
    auto it = std::find(params.begin(), params.end(), name);
    if (it == params.end()) return;
    out.append(text.substr(last, begin - last));
    out += values.at(static_cast<std::size_t>(it - params.begin()));
    last = end;
  });
  out.append(text.substr(last));
  return out;
}

ProcedureRegistry ProcedureRegistry::parse(std::string_view text) {
  ProcedureRegistry reg;
  Procedure* current = nullptr;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    bool indented = raw.front() == ' ' || raw.front() == '\t';
    if (!indented) {
      if (!line.starts_with("proc ")) throw ProcedureFileError(lineno, "expected 'proc' header");
      Procedure p = parse_header(line, lineno);
      if (is_builtin_procedure(p.name)) {
        throw ProcedureFileError(lineno, "'" + p.name + "' is a built-in procedure");
      }
      if (reg.procs_.count(p.name)) {
        throw ProcedureFileError(lineno, "procedure '" + p.name + "' is already defined");
      }
      std::string name = p.name;
      current = &reg.procs_.emplace(name, std::move(p)).first->second;
      continue;
    }
    if (!current) throw ProcedureFileError(lineno, "command outside a procedure");
    check_step(*current, line, lineno);
    current->body.push_back(ProcedureStep{std::string(line), lineno});
  }
  return reg;
}

ProcedureRegistry ProcedureRegistry::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProcedureFileError(0, "cannot read procedure file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Procedure* ProcedureRegistry::find(std::string_view name) const {
  auto it = procs_.find(name);
  return it == procs_.end() ? nullptr : &it->second;
}

}  // namespace armordb
