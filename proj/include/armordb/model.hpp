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

#include <compare>
#include <optional>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace armordb {

/// A namespaced identifier `prefix:local` naming a class, a role or an
/// individual. Ordering and equality follow the canonical text form.
class EntityName {
 public:
  /// Throws Error(kMalformedRequest) if either part is not an identifier.
  EntityName(std::string_view prefix, std::string_view local);

  /// Parses `prefix:local`, or a bare `local` which takes `default_prefix`.
  static EntityName parse(std::string_view text, std::string_view default_prefix = "ex");

  static bool is_identifier(std::string_view s);

  std::string_view prefix() const { return std::string_view(text_).substr(0, colon_); }
  std::string_view local() const { return std::string_view(text_).substr(colon_ + 1); }
  const std::string& str() const { return text_; }

  /// owl:Thing or owl:Nothing
  bool is_reserved() const;

  friend bool operator==(const EntityName& a, const EntityName& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const EntityName& a, const EntityName& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  std::string text_;
  std::size_t colon_;
};

inline const EntityName& thing_name() {
  static const EntityName n{"owl", "Thing"};
  return n;
}
inline const EntityName& nothing_name() {
  static const EntityName n{"owl", "Nothing"};
  return n;
}

/// EL class expression: named, Top, Bottom, intersection (>= 2 operands)
/// or existential restriction. Intersection operands are kept sorted by
/// their canonical text, so equality is equality up to operand order.
class ClassExpression {
 public:
  enum class Kind { kNamed, kTop, kBottom, kIntersection, kExistential };

  /// `owl:Thing` and `owl:Nothing` fold to Top and Bottom.
  static ClassExpression named(EntityName name);
  static ClassExpression top();
  static ClassExpression bottom();
  /// Throws Error(kMalformedRequest) for fewer than two operands.
  static ClassExpression intersection(std::vector<ClassExpression> operands);
  static ClassExpression existential(EntityName role, ClassExpression filler);

  Kind kind() const { return kind_; }
  bool is_named() const { return kind_ == Kind::kNamed; }
  /// Valid for kNamed (class) and kExistential (role).
  const EntityName& name() const { return *name_; }
  /// Operands of an intersection; the single filler of an existential.
  std::span<const ClassExpression> operands() const { return operands_; }
  const ClassExpression& filler() const { return operands_.front(); }

  /// Canonical functional-style text.
  const std::string& text() const { return text_; }

  void collect_signature(std::set<EntityName>& out) const;

  friend bool operator==(const ClassExpression& a, const ClassExpression& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  ClassExpression(Kind kind, std::optional<EntityName> name, std::vector<ClassExpression> operands);

  Kind kind_;
  std::optional<EntityName> name_;
  std::vector<ClassExpression> operands_;
  std::string text_;
};

enum class EntityKind { kClass, kRole, kIndividual };

/// One terminological or assertional statement.
class Axiom {
 public:
  enum class Kind {
    kSubClassOf,
    kEquivalentClasses,
    kDisjointClasses,
    kSubObjectPropertyOf,
    kObjectPropertyDomain,
    kObjectPropertyRange,
    kDeclaration,
    kClassAssertion,
    kObjectPropertyAssertion,
  };

  static Axiom sub_class_of(ClassExpression sub, ClassExpression sup);
  /// Members are sorted; fewer than two throws Error(kMalformedRequest).
  static Axiom equivalent_classes(std::vector<ClassExpression> members);
  static Axiom disjoint_classes(std::vector<ClassExpression> members);
  static Axiom sub_object_property_of(EntityName sub, EntityName sup);
  static Axiom object_property_domain(EntityName role, ClassExpression domain);
  static Axiom object_property_range(EntityName role, ClassExpression range);
  static Axiom declaration(EntityKind kind, EntityName name);
  static Axiom class_assertion(ClassExpression type, EntityName individual);
  static Axiom object_property_assertion(EntityName role, EntityName subject, EntityName object);

  Kind kind() const { return kind_; }
  EntityKind declared_kind() const { return declared_kind_; }

  /// Class-expression slots in textual order: (sub, sup), members,
  /// (domain), (range), (type).
  std::span<const ClassExpression> classes() const { return classes_; }
  /// Entity-name slots in textual order: (sub, sup) roles, (role),
  /// (declared name), (individual), (role, subject, object).
  std::span<const EntityName> names() const { return names_; }

  bool is_assertional() const {
    return kind_ == Kind::kClassAssertion || kind_ == Kind::kObjectPropertyAssertion;
  }

  /// Canonical functional-style text; identity key of the axiom.
  const std::string& text() const { return text_; }

  std::set<EntityName> signature() const;

  /// Throws Error(kReservedName) when owl:Thing/owl:Nothing is declared,
  /// used as an individual, or used as a role.
  void check_reserved() const;

  friend bool operator==(const Axiom& a, const Axiom& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const Axiom& a, const Axiom& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  Axiom(Kind kind, std::vector<ClassExpression> classes, std::vector<EntityName> names,
        EntityKind declared_kind = EntityKind::kClass);

  Kind kind_;
  EntityKind declared_kind_;
  std::vector<ClassExpression> classes_;
  std::vector<EntityName> names_;
  std::string text_;
};

/// Transparent ordering of axioms by canonical text.
struct AxiomLess {
  using is_transparent = void;
  bool operator()(const Axiom& a, const Axiom& b) const { return a.text() < b.text(); }
  bool operator()(const Axiom& a, std::string_view b) const { return a.text() < b; }
  bool operator()(std::string_view a, const Axiom& b) const { return a < b.text(); }
};

std::string_view entity_kind_keyword(EntityKind kind);

}  // namespace armordb
