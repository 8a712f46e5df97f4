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


#include "armordb/dispatcher.hpp"

#include <algorithm>
#include <set>

#include "armordb/ofn.hpp"

namespace armordb {

using protocol::Command;
using protocol::CommandRequest;
using protocol::CommandResponse;

namespace {

constexpr int kMaxProcedureDepth = 8;

EntityName entity(const std::string& text) { return EntityName::parse(text); }
ClassExpression class_arg(const std::string& text) { return ofn::parse_class_expression(text); }

std::vector<ClassExpression> class_args(const std::vector<std::string>& args) {
  std::vector<ClassExpression> out;
  for (const auto& a : args) out.push_back(class_arg(a));
  return out;
}

bool parse_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw Error(ErrorCode::kMalformedRequest, "expected true or false, got '" + text + "'");
}

Axiom axiom_for(const CommandRequest& r, std::size_t first = 0) {
  const auto& p = r.primary_spec;
  const auto& s = r.secondary_spec;
  const auto& a = r.args;
  if (s.empty()) {
    EntityKind kind = p == "CLASS" ? EntityKind::kClass
                      : p == "INDIVIDUAL" ? EntityKind::kIndividual
                                          : EntityKind::kRole;
    return Axiom::declaration(kind, entity(a[first]));
  }
  if (p == "INDIVIDUAL") return Axiom::class_assertion(class_arg(a[1]), entity(a[0]));
  if (p == "CLASS") return Axiom::sub_class_of(class_arg(a[0]), class_arg(a[1]));
  if (p == "OBJECTPROP" && s == "INDIVIDUAL") {
    return Axiom::object_property_assertion(entity(a[0]), entity(a[1]), entity(a[2]));
  }
  if (p == "OBJECTPROP") return Axiom::sub_object_property_of(entity(a[0]), entity(a[1]));
  if (p == "DISJOINT") return Axiom::disjoint_classes(class_args(a));
  if (p == "EQUIV") return Axiom::equivalent_classes(class_args(a));
  if (p == "DOMAIN") return Axiom::object_property_domain(entity(a[0]), class_arg(a[1]));
  return Axiom::object_property_range(entity(a[0]), class_arg(a[1]));
}

std::vector<Change> changes_for(const CommandRequest& r) {
  if (r.command == Command::kReplace) {
    Axiom next = Axiom::object_property_assertion(entity(r.args[0]), entity(r.args[1]), entity(r.args[2]));
    Axiom old = Axiom::object_property_assertion(entity(r.args[0]), entity(r.args[1]), entity(r.args[3]));
    if (next == old) return {Change{ChangeOp::kAdd, next}};
    return {Change{ChangeOp::kRemove, old}, Change{ChangeOp::kAdd, next}};
  }
  ChangeOp op = r.command == Command::kAdd ? ChangeOp::kAdd : ChangeOp::kRemove;
  return {Change{op, axiom_for(r)}};
}

Query query_for(const CommandRequest& r) {
  const auto& p = r.primary_spec;
  const auto& s = r.secondary_spec;
  const auto& a = r.args;
  if (p == "IND") return InstancesQuery{class_arg(a[0]), false};
  if (p == "CLASS" && s == "IND") {
    bool direct = false;
    if (a.size() == 2) {
      if (a[1] != "direct" && a[1] != "all") {
        throw Error(ErrorCode::kMalformedRequest, "expected direct or all, got '" + a[1] + "'");
      }
      direct = a[1] == "direct";
    }
    return TypesQuery{entity(a[0]), direct};
  }
  if (p == "CLASS") {
    HierarchyRelation rel;
    if (a[1] == "sub") {
      rel = HierarchyRelation::kSub;
    } else if (a[1] == "sup") {
      rel = HierarchyRelation::kSup;
    } else if (a[1] == "equiv") {
      rel = HierarchyRelation::kEquiv;
    } else {
      throw Error(ErrorCode::kMalformedRequest, "expected sub, sup or equiv, got '" + a[1] + "'");
    }
    return HierarchyQuery{entity(a[0]), rel};
  }
  return PropertyValuesQuery{entity(a[0]), entity(a[1])};
}

ofn::DocumentModel export_model(const Snapshot& snap) {
  ofn::DocumentModel m = ofn::from_store(*snap.store);
  for (const auto& [p, iri] : snap.prefixes) m.prefixes.insert_or_assign(p, iri);
  return m;
}

CommandResponse from_status(const RefStatus& st) {
  CommandResponse r;
  r.consistent = st.consistent;
  r.applied = st.applied;
  r.revision = st.revision;
  return r;
}

CommandResponse from_snapshot(const Snapshot& snap) {
  return from_status(RefStatus{snap.inference->consistent(), true, snap.store->revision()});
}

std::string describe(const Error& e) {
  return std::to_string(static_cast<int>(e.code())) + " " + std::string(error_name(e.code())) + ": " +
         e.what();
}

// Releases a mount taken on behalf of a procedure.
class TemporaryMount {
 public:
  TemporaryMount(OntologyRef& ref, const std::string& client) : ref_(ref), client_(client) {
    if (!ref_.held_by(client_)) {
      ref_.mount(client_);
      acquired_ = true;
    }
  }
  ~TemporaryMount() {
    if (!acquired_) return;
    try {
      ref_.unmount(client_);
    } catch (const Error&) {
      // A step may already have unmounted or the lease been forced away.
    }
  }
  TemporaryMount(const TemporaryMount&) = delete;
  TemporaryMount& operator=(const TemporaryMount&) = delete;

 private:
  OntologyRef& ref_;
  const std::string& client_;
  bool acquired_ = false;
};

}  // namespace

CommandResponse Dispatcher::handle(const CommandRequest& request) const { return handle(request, 0); }

CommandResponse Dispatcher::handle(const CommandRequest& request, int depth) const {
  try {
    protocol::validate(request);
    return execute(request, depth);
  } catch (const Error& e) {
    CommandResponse r = CommandResponse::failure(e.code(), e.what());
    try {
      RefStatus st = refs_.get(request.reference_name)->status();
      r.consistent = st.consistent;
      r.revision = st.revision;
    } catch (const Error&) {
    }
    return r;
  } catch (const std::exception& e) {
    return CommandResponse::failure(ErrorCode::kInternalError, e.what());
  }
}

std::string Dispatcher::handle_line(std::string_view line) const {
  CommandRequest request;
  try {
    request = protocol::decode_request(line);
  } catch (const Error& e) {
    return protocol::encode(CommandResponse::failure(e.code(), e.what()));
  } catch (const std::exception& e) {
    return protocol::encode(CommandResponse::failure(ErrorCode::kInternalError, e.what()));
  }
  return protocol::encode(handle(request));
}

CommandResponse Dispatcher::execute(const CommandRequest& r, int depth) const {
  const std::string& client = r.client_name;
  switch (r.command) {
    case Command::kCreate:
      return from_status(refs_.create(r.reference_name)->status());
    case Command::kDrop: {
      refs_.drop(client, r.reference_name);
      CommandResponse resp;
      resp.applied = true;
      return resp;
    }
    case Command::kProc:
      return run_procedure(r, depth);
    default:
      break;
  }

  auto ref = refs_.get(r.reference_name);
  switch (r.command) {
    case Command::kAdd:
    case Command::kRemove:
    case Command::kReplace:
      return from_status(ref->manipulate(client, changes_for(r)));
    case Command::kQuery: {
      Query q = query_for(r);
      auto snap = ref->snapshot();
      CommandResponse resp = from_snapshot(*snap);
      for (const EntityName& n : run_query(*snap, q)) resp.queried_names.push_back(n.str());
      return resp;
    }
    case Command::kLoad: {
      ofn::DocumentModel m = ofn::read_file(r.args[0]);
      std::vector<Change> changes;
      for (const Axiom& a : m.axioms) changes.push_back(Change{ChangeOp::kAdd, a});
      return from_status(ref->load(client, changes, m.prefixes));
    }
    case Command::kSave: {
      auto snap = ref->snapshot();
      ofn::write_file(r.args[0], export_model(*snap));
      return from_snapshot(*snap);
    }
    case Command::kDump: {
      auto snap = ref->snapshot();
      CommandResponse resp = from_snapshot(*snap);
      resp.error_description = ofn::serialize(export_model(*snap));
      return resp;
    }
    case Command::kMount:
      ref->mount(client);
      return from_status(ref->status());
    case Command::kUnmount:
      if (r.primary_spec == "FORCE") {
        ref->force_unmount();
      } else {
        ref->unmount(client);
      }
      return from_status(ref->status());
    case Command::kReason:
      return from_status(ref->reason(client));
    case Command::kApply:
      return from_status(ref->apply(client));
    case Command::kConfig:
      return from_status(ref->configure(client, r.args[0], parse_bool(r.args[1])));
    default:
      throw Error(ErrorCode::kInternalError, "unhandled command");
  }
}

CommandResponse Dispatcher::run_procedure(const CommandRequest& r, int depth) const {
  if (depth >= kMaxProcedureDepth) throw Error(ErrorCode::kProcedureFailed, "procedure nesting too deep");
  const std::string& name = r.args[0];
  std::vector<std::string> values(r.args.begin() + 1, r.args.end());
  const Procedure* proc = procedures_.find(name);
  std::size_t expected = 0;
  if (is_builtin_procedure(name)) {
    expected = 2;
  } else if (proc) {
    expected = proc->params.size();
  } else {
    throw Error(ErrorCode::kUnknownProcedure, "unknown procedure '" + name + "'");
  }
  if (values.size() != expected) {
    throw Error(ErrorCode::kBadArity, "procedure '" + name + "' takes " + std::to_string(expected) +
                                          " argument(s), got " + std::to_string(values.size()));
  }

  auto ref = refs_.get(r.reference_name);
  TemporaryMount mount(*ref, r.client_name);
  if (!proc) return abstract_class(r.client_name, *ref, values);

  std::set<std::string> names;
  for (std::size_t i = 0; i < proc->body.size(); ++i) {
    const ProcedureStep& step = proc->body[i];
    std::string text = substitute(step.text, proc->params, values);
    CommandResponse resp;
    try {
      CommandRequest sub = protocol::parse_command_text(text);
      sub.client_name = r.client_name;
      sub.reference_name = r.reference_name;
      resp = handle(sub, depth + 1);
    } catch (const Error& e) {
      resp = CommandResponse::failure(e.code(), e.what());
    }
    if (!resp.success) {
      throw Error(ErrorCode::kProcedureFailed,
                  "step " + std::to_string(i + 1) + " (" + text + ") failed: " +
                      std::to_string(static_cast<int>(resp.error_code)) + " " +
                      std::string(error_name(resp.error_code)) + ": " + resp.error_description);
    }
    names.insert(resp.queried_names.begin(), resp.queried_names.end());
  }
  CommandResponse out = from_status(ref->status());
  out.queried_names.assign(names.begin(), names.end());
  return out;
}

CommandResponse Dispatcher::abstract_class(const std::string& client, OntologyRef& ref,
                                           const std::vector<std::string>& args) const {
  try {
    EntityName individual = entity(args[0]);
    EntityName defined = entity(args[1]);
    ref.reason(client);
    auto snap = ref.snapshot();
    if (!snap->store->mentions(individual)) {
      throw Error(ErrorCode::kUnknownEntity, "unknown entity '" + individual.str() + "'");
    }
    std::vector<ClassExpression> conjuncts;
    for (const Axiom& a : snap->store->axioms()) {
      if (a.kind() != Axiom::Kind::kObjectPropertyAssertion || a.names()[1] != individual) continue;
      std::vector<ClassExpression> types;
      for (const EntityName& t : snap->inference->types_of(a.names()[2], true)) {
        types.push_back(ClassExpression::named(t));
      }
      ClassExpression filler = types.empty()       ? ClassExpression::top()
                               : types.size() == 1 ? types.front()
                                                   : ClassExpression::intersection(types);
      ClassExpression part = ClassExpression::existential(a.names()[0], filler);
      if (std::find(conjuncts.begin(), conjuncts.end(), part) == conjuncts.end()) conjuncts.push_back(part);
    }
    if (conjuncts.empty()) {
      throw Error(ErrorCode::kUnknownEntity, "'" + individual.str() + "' has no asserted property values");
    }
    ClassExpression definition =
        conjuncts.size() == 1 ? conjuncts.front() : ClassExpression::intersection(conjuncts);
    ref.manipulate(client, {Change{ChangeOp::kAdd, Axiom::declaration(EntityKind::kClass, defined)},
                            Change{ChangeOp::kAdd, Axiom::equivalent_classes(
                                                       {ClassExpression::named(defined), definition})}});
    CommandResponse out = from_status(ref.reason(client));
    out.queried_names.push_back(defined.str());
    return out;
  } catch (const Error& e) {
    throw Error(ErrorCode::kProcedureFailed, std::string(kAbstractClassProcedure) + " failed: " + describe(e));
  }
}

}  // namespace armordb
