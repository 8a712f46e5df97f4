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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "armordb/axiom_store.hpp"
#include "armordb/error.hpp"
#include "armordb/model.hpp"

namespace armordb::ofn {

inline constexpr std::string_view kExampleIri = "http://example.org/armordb#";
inline constexpr std::string_view kOwlIri = "http://www.w3.org/2002/07/owl#";

/// A functional-syntax document restricted to the supported axiom forms.
struct DocumentModel {
  /// Prefix name (without the colon) -> IRI. `ex` and `owl` are always
  /// present.
  std::map<std::string, std::string> prefixes{{"ex", std::string(kExampleIri)},
                                              {"owl", std::string(kOwlIri)}};
  /// IRI text between the angle brackets.
  std::optional<std::string> ontology_iri;
  std::vector<Axiom> axioms;

  /// Same prefixes, same name and the same axioms as a multiset.
  friend bool operator==(const DocumentModel& a, const DocumentModel& b);
};

/// Syntax errors carry a 1-based position; kUnsupportedExpression errors
/// also name the construct.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

DocumentModel parse(std::string_view text);

/// Canonical text: prefixes sorted, one axiom per line sorted by text,
/// LF line endings.
std::string serialize(const DocumentModel& model);

DocumentModel from_store(const AxiomStore& store);

/// A single class expression as used in command arguments. Bare names take
/// the `ex` prefix.
ClassExpression parse_class_expression(std::string_view text);

DocumentModel read_file(const std::string& path);
void write_file(const std::string& path, const DocumentModel& model);

}  // namespace armordb::ofn
