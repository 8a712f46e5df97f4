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


#include "armordb/protocol.hpp"

#include <algorithm>
#include <array>

#include "json.hpp"

#include "armordb/model.hpp"

namespace armordb::protocol {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 15> kCommandNames = {
    "ADD",   "REMOVE", "REPLACE", "QUERY",  "LOAD",  "SAVE",   "CREATE", "DROP",
    "MOUNT", "UNMOUNT", "REASON", "APPLY",  "CONFIG", "PROC",  "DUMP",
};

constexpr std::array<std::string_view, 11> kSpecifiers = {
    "CLASS", "INDIVIDUAL", "OBJECTPROP", "DISJOINT", "EQUIV", "DOMAIN",
    "RANGE", "IND",        "FILE",       "FLAG",     "FORCE",
};

using enum Command;

constexpr CommandRow kTable[] = {
    {kAdd, "CLASS", "", 1, 1, "declare class"},
    {kAdd, "INDIVIDUAL", "", 1, 1, "declare individual"},
    {kAdd, "OBJECTPROP", "", 1, 1, "declare object property"},
    {kAdd, "INDIVIDUAL", "CLASS", 2, 2, "class assertion: individual, class"},
    {kAdd, "CLASS", "CLASS", 2, 2, "subclass: sub, super"},
    {kAdd, "OBJECTPROP", "INDIVIDUAL", 3, 3, "property assertion: property, subject, object"},
    {kAdd, "OBJECTPROP", "OBJECTPROP", 2, 2, "property hierarchy: sub, super"},
    {kAdd, "DISJOINT", "CLASS", 2, kUnbounded, "disjoint classes"},
    {kAdd, "EQUIV", "CLASS", 2, 2, "equivalent classes"},
    {kAdd, "DOMAIN", "OBJECTPROP", 2, 2, "property domain: property, class"},
    {kAdd, "RANGE", "OBJECTPROP", 2, 2, "property range: property, class"},
    {kRemove, "CLASS", "", 1, 1, "undeclare class"},
    {kRemove, "INDIVIDUAL", "", 1, 1, "undeclare individual"},
    {kRemove, "OBJECTPROP", "", 1, 1, "undeclare object property"},
    {kRemove, "INDIVIDUAL", "CLASS", 2, 2, "class assertion: individual, class"},
    {kRemove, "CLASS", "CLASS", 2, 2, "subclass: sub, super"},
    {kRemove, "OBJECTPROP", "INDIVIDUAL", 3, 3, "property assertion: property, subject, object"},
    {kRemove, "OBJECTPROP", "OBJECTPROP", 2, 2, "property hierarchy: sub, super"},
    {kRemove, "DISJOINT", "CLASS", 2, kUnbounded, "disjoint classes"},
    {kRemove, "EQUIV", "CLASS", 2, 2, "equivalent classes"},
    {kRemove, "DOMAIN", "OBJECTPROP", 2, 2, "property domain: property, class"},
    {kRemove, "RANGE", "OBJECTPROP", 2, 2, "property range: property, class"},
    {kReplace, "OBJECTPROP", "INDIVIDUAL", 4, 4, "property value: property, subject, new, old"},
    {kQuery, "IND", "CLASS", 1, 1, "instances of class"},
    {kQuery, "CLASS", "IND", 1, 2, "types of individual [direct|all]"},
    {kQuery, "CLASS", "CLASS", 2, 2, "hierarchy neighbours: class, sub|sup|equiv"},
    {kQuery, "OBJECTPROP", "IND", 2, 2, "property values: property, subject"},
    {kLoad, "FILE", "", 1, 1, "load ontology file"},
    {kSave, "FILE", "", 1, 1, "save ontology file"},
    {kCreate, "", "", 0, 0, "create reference"},
    {kDrop, "", "", 0, 0, "drop reference"},
    {kMount, "", "", 0, 0, "mount reference"},
    {kUnmount, "", "", 0, 0, "unmount reference"},
    {kUnmount, "FORCE", "", 0, 0, "clear any lease"},
    {kReason, "", "", 0, 0, "flush buffer and reason"},
    {kApply, "", "", 0, 0, "flush buffer"},
    {kConfig, "FLAG", "", 2, 2, "set flag: name, true|false"},
    {kProc, "", "", 1, kUnbounded, "run procedure: name, args..."},
    {kDump, "", "", 0, 0, "serialized ontology"},
};

[[noreturn]] void malformed(std::string message) {
  throw Error(ErrorCode::kMalformedRequest, std::move(message));
}

std::string row_label(Command c, std::string_view primary, std::string_view secondary) {
  std::string out(command_name(c));
  if (!primary.empty()) (out += ' ') += primary;
  if (!secondary.empty()) (out += ' ') += secondary;
  return out;
}

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) malformed(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) malformed(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

bool bool_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_boolean()) malformed(std::string("field '") + name + "' must be a boolean");
  return v.get<bool>();
}

std::vector<std::string> string_list(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) malformed(std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_string()) malformed(std::string("field '") + name + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

void reject_unknown_fields(const Json& j, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      malformed("unknown field '" + key + "'");
    }
  }
}

Json parse_object(std::string_view line) {
  Json j = Json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) malformed("line is not valid JSON");
  if (!j.is_object()) malformed("line is not a JSON object");
  return j;
}

std::string dump_line(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

// Safe characters for unquoted arguments in the text form.
bool bare_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == ':' || c == '.' || c == '-' || c == '/' || c == '$';
}

struct TextToken {
  std::string text;
  bool quoted = false;
};

std::vector<TextToken> tokenize(std::string_view text) {
  std::vector<TextToken> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (i < text.size()) {
    if (space(text[i])) {
      ++i;
      continue;
    }
    TextToken tok;
    if (text[i] == '"') {
      tok.quoted = true;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        char c = text[i++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\\') {
          if (i >= text.size()) break;
          c = text[i++];
        }
        tok.text += c;
      }
      if (!closed) malformed("unterminated quoted argument");
      if (i < text.size() && !space(text[i])) malformed("quoted argument must be followed by whitespace");
    } else {
      int depth = 0;
      while (i < text.size() && (depth > 0 || !space(text[i]))) {
        char c = text[i++];
        if (c == '"') malformed("quote inside unquoted argument");
        if (c == '(') ++depth;
        if (c == ')' && --depth < 0) malformed("unbalanced ')' in argument");
        tok.text += c;
      }
      if (depth != 0) malformed("unbalanced '(' in argument");
    }
    out.push_back(std::move(tok));
  }
  return out;
}

bool row_has_prefix(Command c, std::string_view primary, std::string_view secondary) {
  return std::any_of(std::begin(kTable), std::end(kTable), [&](const CommandRow& r) {
    return r.command == c && r.primary == primary && (secondary.empty() || r.secondary == secondary);
  });
}

}  // namespace

std::string_view command_name(Command c) { return kCommandNames.at(static_cast<std::size_t>(c)); }

std::optional<Command> parse_command(std::string_view name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (kCommandNames[i] == name) return static_cast<Command>(i);
  }
  return std::nullopt;
}

std::span<const CommandRow> command_table() { return kTable; }

bool is_specifier(std::string_view token) {
  return std::find(kSpecifiers.begin(), kSpecifiers.end(), token) != kSpecifiers.end();
}

const CommandRow* find_row(Command c, std::string_view primary, std::string_view secondary) {
  for (const CommandRow& r : kTable) {
    if (r.command == c && r.primary == primary && r.secondary == secondary) return &r;
  }
  return nullptr;
}

CommandResponse CommandResponse::failure(ErrorCode code, std::string description) {
  CommandResponse r;
  r.success = false;
  r.error_code = code;
  r.error_description = description.empty() ? std::string(error_name(code)) : std::move(description);
  return r;
}

const CommandRow& validate(const CommandRequest& request) {
  if (!EntityName::is_identifier(request.client_name)) {
    malformed("client_name '" + request.client_name + "' is not an identifier");
  }
  if (!EntityName::is_identifier(request.reference_name)) {
    malformed("reference_name '" + request.reference_name + "' is not an identifier");
  }
  const CommandRow* row = find_row(request.command, request.primary_spec, request.secondary_spec);
  if (row == nullptr) {
    throw Error(ErrorCode::kUnknownCommand,
                "no command " + row_label(request.command, request.primary_spec, request.secondary_spec));
  }
  std::size_t n = request.args.size();
  if (n < row->min_args || n > row->max_args) {
    std::string expected = std::to_string(row->min_args);
    if (row->max_args == kUnbounded) {
      expected = "at least " + expected;
    } else if (row->max_args != row->min_args) {
      expected += " to " + std::to_string(row->max_args);
    }
    throw Error(ErrorCode::kBadArity, row_label(row->command, row->primary, row->secondary) + " takes " +
                                          expected + " argument(s), got " + std::to_string(n));
  }
  return *row;
}

std::string encode(const CommandRequest& request) {
  Json j;
  j["client_name"] = request.client_name;
  j["reference_name"] = request.reference_name;
  j["command"] = command_name(request.command);
  j["primary_spec"] = request.primary_spec;
  j["secondary_spec"] = request.secondary_spec;
  j["args"] = request.args;
  return dump_line(j);
}

std::string encode(const CommandResponse& response) {
  Json j;
  j["success"] = response.success;
  j["consistent"] = response.consistent;
  j["error_code"] = static_cast<int>(response.error_code);
  j["error_description"] = response.error_description;
  j["queried_names"] = response.queried_names;
  j["applied"] = response.applied;
  j["revision"] = response.revision;
  return dump_line(j);
}

CommandRequest decode_request(std::string_view line) {
  Json j = parse_object(line);
  reject_unknown_fields(
      j, {"client_name", "reference_name", "command", "primary_spec", "secondary_spec", "args"});
  CommandRequest r;
  r.client_name = string_field(j, "client_name");
  r.reference_name = string_field(j, "reference_name");
  std::string verb = string_field(j, "command");
  r.primary_spec = string_field(j, "primary_spec");
  r.secondary_spec = string_field(j, "secondary_spec");
  r.args = string_list(j, "args");
  auto c = parse_command(verb);
  if (!c) throw Error(ErrorCode::kUnknownCommand, "unknown command '" + verb + "'");
  r.command = *c;
  validate(r);
  return r;
}

CommandResponse decode_response(std::string_view line) {
  Json j = parse_object(line);
  reject_unknown_fields(j, {"success", "consistent", "error_code", "error_description", "queried_names",
                            "applied", "revision"});
  CommandResponse r;
  r.success = bool_field(j, "success");
  r.consistent = bool_field(j, "consistent");
  const Json& code = field(j, "error_code");
  if (!code.is_number_integer() || !is_registered_code(code.get<int>())) {
    malformed("field 'error_code' is not a registered code");
  }
  r.error_code = static_cast<ErrorCode>(code.get<int>());
  r.error_description = string_field(j, "error_description");
  r.queried_names = string_list(j, "queried_names");
  r.applied = bool_field(j, "applied");
  const Json& rev = field(j, "revision");
  if (!rev.is_number_unsigned()) malformed("field 'revision' must be a non-negative integer");
  r.revision = rev.get<std::uint64_t>();
  return r;
}

CommandRequest parse_command_text(std::string_view text) {
  std::vector<TextToken> tokens = tokenize(text);
  if (tokens.empty()) malformed("empty command");
  if (tokens[0].quoted) malformed("command verb must not be quoted");
  auto c = parse_command(tokens[0].text);
  if (!c) throw Error(ErrorCode::kUnknownCommand, "unknown command '" + tokens[0].text + "'");
  CommandRequest r;
  r.command = *c;
  std::size_t i = 1;
  // Specifiers are taken greedily while they extend some table row.
  if (i < tokens.size() && !tokens[i].quoted && is_specifier(tokens[i].text) &&
      row_has_prefix(r.command, tokens[i].text, "")) {
    r.primary_spec = tokens[i++].text;
    if (i < tokens.size() && !tokens[i].quoted && is_specifier(tokens[i].text) &&
        row_has_prefix(r.command, r.primary_spec, tokens[i].text)) {
      r.secondary_spec = tokens[i++].text;
    }
  }
  for (; i < tokens.size(); ++i) r.args.push_back(std::move(tokens[i].text));
  return r;
}

std::string format_command_text(const CommandRequest& request) {
  std::string out(command_name(request.command));
  if (!request.primary_spec.empty()) (out += ' ') += request.primary_spec;
  if (!request.secondary_spec.empty()) (out += ' ') += request.secondary_spec;
  for (const std::string& a : request.args) {
    out += ' ';
    bool bare = !a.empty() && !is_specifier(a) && std::all_of(a.begin(), a.end(), bare_char);
    if (bare) {
      out += a;
      continue;
    }
    out += '"';
    for (char ch : a) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    out += '"';
  }
  return out;
}

std::string format_human(const CommandResponse& response) {
  if (!response.success) {
    return "ERROR " + std::to_string(static_cast<int>(response.error_code)) + " " +
           std::string(error_name(response.error_code)) + ": " + response.error_description;
  }
  std::string out = "OK revision=" + std::to_string(response.revision) +
                    " consistent=" + (response.consistent ? "true" : "false") +
                    " applied=" + (response.applied ? "true" : "false");
  if (!response.queried_names.empty()) {
    out += " names=[";
    for (std::size_t i = 0; i < response.queried_names.size(); ++i) {
      if (i) out += ", ";
      out += response.queried_names[i];
    }
    out += ']';
  }
  if (!response.error_description.empty()) (out += '\n') += response.error_description;
  return out;
}

}  // namespace armordb::protocol
