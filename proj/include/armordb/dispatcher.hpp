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

#include <string>
#include <string_view>

#include "armordb/procedures.hpp"
#include "armordb/protocol.hpp"
#include "armordb/reference_map.hpp"

namespace armordb {

/// Executes protocol requests against a reference map. Stateless apart
/// from the references themselves, so one instance serves every
/// connection.
class Dispatcher {
 public:
  Dispatcher(ReferenceMap& refs, ProcedureRegistry procedures)
      : refs_(refs), procedures_(std::move(procedures)) {}

  /// Never throws; failures become error responses.
  protocol::CommandResponse handle(const protocol::CommandRequest& request) const;
  /// Decodes, handles and encodes one wire line.
  std::string handle_line(std::string_view line) const;

  const ProcedureRegistry& procedures() const { return procedures_; }

 private:
  protocol::CommandResponse execute(const protocol::CommandRequest& request, int depth) const;
  protocol::CommandResponse handle(const protocol::CommandRequest& request, int depth) const;
  protocol::CommandResponse run_procedure(const protocol::CommandRequest& request, int depth) const;
  protocol::CommandResponse abstract_class(const std::string& client, OntologyRef& ref,
                                           const std::vector<std::string>& args) const;

  ReferenceMap& refs_;
  ProcedureRegistry procedures_;
};

}  // namespace armordb
