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


#include "armordb/model.hpp"

#include <algorithm>

#include "armordb/error.hpp"

namespace armordb {

namespace {

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '-'; }

std::string join_texts(std::span<const ClassExpression> xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ' ';
    out += x.text();
  }
  return out;
}

}  // namespace

// --- EntityName -------------------------------------------------------------

bool EntityName::is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), ident_char);
}

EntityName::EntityName(std::string_view prefix, std::string_view local) {
  if (!is_identifier(prefix) || !is_identifier(local)) {
    throw Error(ErrorCode::kMalformedRequest,
                "invalid entity name '" + std::string(prefix) + ":" + std::string(local) + "'");
  }
  text_.reserve(prefix.size() + local.size() + 1);
  text_.append(prefix).append(":").append(local);
  colon_ = prefix.size();
}

EntityName EntityName::parse(std::string_view text, std::string_view default_prefix) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return EntityName(default_prefix, text);
  return EntityName(text.substr(0, colon), text.substr(colon + 1));
}

bool EntityName::is_reserved() const { return *this == thing_name() || *this == nothing_name(); }

// --- ClassExpression --------------------------------------------------------

ClassExpression::ClassExpression(Kind kind, std::optional<EntityName> name,
                                 std::vector<ClassExpression> operands)
    : kind_(kind), name_(std::move(name)), operands_(std::move(operands)) {
  switch (kind_) {
    case Kind::kNamed:
      text_ = name_->str();
      break;
    case Kind::kTop:
      text_ = "owl:Thing";
      break;
    case Kind::kBottom:
      text_ = "owl:Nothing";
      break;
    case Kind::kIntersection:
      std::sort(operands_.begin(), operands_.end());
      text_ = "ObjectIntersectionOf(" + join_texts(operands_) + ")";
      break;
    case Kind::kExistential:
      text_ = "ObjectSomeValuesFrom(" + name_->str() + " " + operands_.front().text() + ")";
      break;
  }
}

ClassExpression ClassExpression::named(EntityName name) {
  if (name == thing_name()) return top();
  if (name == nothing_name()) return bottom();
  return ClassExpression(Kind::kNamed, std::move(name), {});
}

ClassExpression ClassExpression::top() { return ClassExpression(Kind::kTop, std::nullopt, {}); }

ClassExpression ClassExpression::bottom() {
  return ClassExpression(Kind::kBottom, std::nullopt, {});
}

ClassExpression ClassExpression::intersection(std::vector<ClassExpression> operands) {
  if (operands.size() < 2) {
    throw Error(ErrorCode::kMalformedRequest, "ObjectIntersectionOf needs at least two operands");
  }
  return ClassExpression(Kind::kIntersection, std::nullopt, std::move(operands));
}

ClassExpression ClassExpression::existential(EntityName role, ClassExpression filler) {
  std::vector<ClassExpression> ops;
  ops.push_back(std::move(filler));
  return ClassExpression(Kind::kExistential, std::move(role), std::move(ops));
}

void ClassExpression::collect_signature(std::set<EntityName>& out) const {
  if (name_) out.insert(*name_);
  for (const auto& op : operands_) op.collect_signature(out);
}

// --- Axiom ------------------------------------------------------------------

std::string_view entity_kind_keyword(EntityKind kind) {
  switch (kind) {
    case EntityKind::kClass:
      return "Class";
    case EntityKind::kRole:
      return "ObjectProperty";
    case EntityKind::kIndividual:
      return "NamedIndividual";
  }
  return "Class";
}

Axiom::Axiom(Kind kind, std::vector<ClassExpression> classes, std::vector<EntityName> names,
             EntityKind declared_kind)
    : kind_(kind),
      declared_kind_(declared_kind),
      classes_(std::move(classes)),
      names_(std::move(names)) {
  auto name_list = [this] {
    std::string out;
    for (const auto& n : names_) {
      if (!out.empty()) out += ' ';
      out += n.str();
    }
    return out;
  };
  switch (kind_) {
    case Kind::kSubClassOf:
      text_ = "SubClassOf(" + join_texts(classes_) + ")";
      break;
    case Kind::kEquivalentClasses:
      text_ = "EquivalentClasses(" + join_texts(classes_) + ")";
      break;
    case Kind::kDisjointClasses:
      text_ = "DisjointClasses(" + join_texts(classes_) + ")";
      break;
    case Kind::kSubObjectPropertyOf:
      text_ = "SubObjectPropertyOf(" + name_list() + ")";
      break;
    case Kind::kObjectPropertyDomain:
      text_ = "ObjectPropertyDomain(" + names_[0].str() + " " + classes_[0].text() + ")";
      break;
    case Kind::kObjectPropertyRange:
      text_ = "ObjectPropertyRange(" + names_[0].str() + " " + classes_[0].text() + ")";
      break;
    case Kind::kDeclaration:
      text_ = "Declaration(" + std::string(entity_kind_keyword(declared_kind_)) + "(" +
              names_[0].str() + "))";
      break;
    case Kind::kClassAssertion:
      text_ = "ClassAssertion(" + classes_[0].text() + " " + names_[0].str() + ")";
      break;
    case Kind::kObjectPropertyAssertion:
      text_ = "ObjectPropertyAssertion(" + name_list() + ")";
      break;
  }
}

Axiom Axiom::sub_class_of(ClassExpression sub, ClassExpression sup) {
  std::vector<ClassExpression> cs;
  cs.push_back(std::move(sub));
  cs.push_back(std::move(sup));
  return Axiom(Kind::kSubClassOf, std::move(cs), {});
}

Axiom Axiom::equivalent_classes(std::vector<ClassExpression> members) {
  if (members.size() < 2) {
    throw Error(ErrorCode::kMalformedRequest, "EquivalentClasses needs at least two members");
  }
  std::sort(members.begin(), members.end());
  return Axiom(Kind::kEquivalentClasses, std::move(members), {});
}

Axiom Axiom::disjoint_classes(std::vector<ClassExpression> members) {
  if (members.size() < 2) {
    throw Error(ErrorCode::kMalformedRequest, "DisjointClasses needs at least two members");
  }
  std::sort(members.begin(), members.end());
  return Axiom(Kind::kDisjointClasses, std::move(members), {});
}

Axiom Axiom::sub_object_property_of(EntityName sub, EntityName sup) {
  return Axiom(Kind::kSubObjectPropertyOf, {}, {std::move(sub), std::move(sup)});
}

Axiom Axiom::object_property_domain(EntityName role, ClassExpression domain) {
  return Axiom(Kind::kObjectPropertyDomain, {std::move(domain)}, {std::move(role)});
}

Axiom Axiom::object_property_range(EntityName role, ClassExpression range) {
  return Axiom(Kind::kObjectPropertyRange, {std::move(range)}, {std::move(role)});
}

Axiom Axiom::declaration(EntityKind kind, EntityName name) {
  return Axiom(Kind::kDeclaration, {}, {std::move(name)}, kind);
}

Axiom Axiom::class_assertion(ClassExpression type, EntityName individual) {
  return Axiom(Kind::kClassAssertion, {std::move(type)}, {std::move(individual)});
}

Axiom Axiom::object_property_assertion(EntityName role, EntityName subject, EntityName object) {
  return Axiom(Kind::kObjectPropertyAssertion, {},
               {std::move(role), std::move(subject), std::move(object)});
}

std::set<EntityName> Axiom::signature() const {
  std::set<EntityName> out(names_.begin(), names_.end());
  for (const auto& c : classes_) c.collect_signature(out);
  return out;
}

namespace {

void check_roles(const ClassExpression& c) {
  if (c.kind() == ClassExpression::Kind::kExistential && c.name().is_reserved()) {
    throw Error(ErrorCode::kReservedName, c.name().str() + " cannot be used as a role");
  }
  for (const auto& op : c.operands()) check_roles(op);
}

}  // namespace

void Axiom::check_reserved() const {
  for (const auto& c : classes_) check_roles(c);
  switch (kind_) {
    case Kind::kDeclaration:
      if (names_[0].is_reserved()) {
        throw Error(ErrorCode::kReservedName, names_[0].str() + " cannot be declared");
      }
      break;
    case Kind::kClassAssertion:
      if (names_[0].is_reserved()) {
        throw Error(ErrorCode::kReservedName, names_[0].str() + " cannot be an individual");
      }
      break;
    case Kind::kObjectPropertyAssertion:
      if (names_[0].is_reserved()) {
        throw Error(ErrorCode::kReservedName, names_[0].str() + " cannot be used as a role");
      }
      if (names_[1].is_reserved() || names_[2].is_reserved()) {
        throw Error(ErrorCode::kReservedName, "owl:Thing/owl:Nothing cannot be an individual");
      }
      break;
    case Kind::kSubObjectPropertyOf:
    case Kind::kObjectPropertyDomain:
    case Kind::kObjectPropertyRange:
      for (const auto& n : names_) {
        if (n.is_reserved()) {
          throw Error(ErrorCode::kReservedName, n.str() + " cannot be used as a role");
        }
      }
      break;
    default:
      break;
  }
}

}  // namespace armordb
