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
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "armordb/axiom_store.hpp"
#include "armordb/model.hpp"

namespace armordb {

/// Identifier of the only reasoner this build ships.
inline constexpr std::string_view kBuiltinReasoner = "builtin-el";

/// Inclusions in EL normal form over integer concept ids. Ids 0 and 1 are
/// Top and Bottom; named classes, auxiliary names (`gen:N`) and individual
/// nodes (`{ex:a}`) follow.
struct NormalizedTBox {
  enum class Shape {
    kAtomic,       // lhs ⊑ rhs
    kConjunction,  // lhs ⊓ lhs2 ⊑ rhs
    kExistsRight,  // lhs ⊑ ∃role.rhs
    kExistsLeft,   // ∃role.lhs ⊑ rhs
  };
  enum class NodeKind { kTop, kBottom, kClass, kAuxiliary, kIndividual };

  struct Inclusion {
    Shape shape;
    int lhs;
    int lhs2;  // kConjunction only
    int role;  // kExists* only
    int rhs;

    friend bool operator==(const Inclusion&, const Inclusion&) = default;
  };

  static constexpr int kTop = 0;
  static constexpr int kBottom = 1;

  std::vector<std::string> concept_names;
  std::vector<NodeKind> concept_kinds;
  std::vector<EntityName> role_names;
  std::vector<Inclusion> inclusions;
  /// Told role inclusions (sub, sup).
  std::vector<std::pair<int, int>> role_inclusions;
  /// Property assertions as edges (subject node, role, object node).
  std::vector<std::tuple<int, int, int>> edges;

  std::string to_string(const Inclusion& inc) const;
  /// Every inclusion rendered with concept names, sorted.
  std::vector<std::string> to_strings() const;
  /// Concept id of a named class, or -1.
  int find_class(const EntityName& name) const;
  int find_individual(const EntityName& name) const;
};

/// Rewrites terminological and assertional axioms into normal form.
/// Ranges are compiled by specialising each existential successor of a
/// ranged role into an auxiliary node subsumed by the range; property
/// assertions put the range directly on the object individual.
/// `queries` are internalised as `expr ⊑ gen:qN`; the returned ids are
/// the query concepts in order.
NormalizedTBox normalize(std::span<const Axiom> axioms,
                         std::span<const ClassExpression> queries = {},
                         std::vector<int>* query_ids = nullptr);

/// Subsumptions between named classes, owl:Thing and owl:Nothing, plus the
/// reflexive-transitive role hierarchy.
class SubsumptionSet {
 public:
  using Pair = std::pair<EntityName, EntityName>;

  bool contains(const EntityName& sub, const EntityName& sup) const {
    return pairs_.count({sub, sup}) > 0;
  }
  bool role_contains(const EntityName& sub, const EntityName& sup) const {
    return role_pairs_.count({sub, sup}) > 0;
  }
  const std::set<Pair>& pairs() const { return pairs_; }
  const std::set<Pair>& role_pairs() const { return role_pairs_; }
  /// Named classes of the input plus owl:Thing and owl:Nothing.
  const std::set<EntityName>& classes() const { return classes_; }

 private:
  friend struct Saturator;
  std::set<Pair> pairs_;
  std::set<Pair> role_pairs_;
  std::set<EntityName> classes_;
};

struct Realization {
  bool consistent = true;
  /// Individual -> named classes it belongs to, including owl:Thing.
  std::map<EntityName, std::set<EntityName>> types;
};

struct Saturation {
  SubsumptionSet subsumptions;
  Realization realization;
  /// For each internalised query: the individuals in it, the named
  /// classes subsuming it and the named classes it subsumes.
  struct QueryResult {
    std::set<EntityName> instances;
    std::set<EntityName> supers;
    std::set<EntityName> subs;
  };
  std::vector<QueryResult> queries;
};

/// Least fixpoint of the completion rules. When the ontology is
/// inconsistent every subsumption and every type is reported.
Saturation saturate(std::span<const Axiom> axioms, std::span<const ClassExpression> queries = {});

/// Transitive reduction of a subsumption set with equivalent classes
/// grouped. owl:Thing and owl:Nothing take part as ordinary nodes.
class Hierarchy {
 public:
  explicit Hierarchy(const SubsumptionSet& subs);

  /// Members of the group containing `name`, sorted.
  const std::vector<EntityName>& group_of(const EntityName& name) const;
  /// Direct super/sub groups of the group containing `name`.
  std::vector<std::vector<EntityName>> direct_supers(const EntityName& name) const;
  std::vector<std::vector<EntityName>> direct_subs(const EntityName& name) const;
  bool contains(const EntityName& name) const { return group_index_.count(name) > 0; }

  const std::vector<std::vector<EntityName>>& groups() const { return groups_; }
  /// Direct edges between group indices (sub, sup).
  const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

 private:
  std::vector<std::vector<EntityName>> groups_;
  std::map<EntityName, std::size_t> group_index_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
};

enum class HierarchyRelation { kSub, kSup, kEquiv };

/// Saturated snapshot of one store revision together with the query
/// operations served from it. Immutable once built.
class Inference {
 public:
  static std::shared_ptr<const Inference> compute(std::shared_ptr<const AxiomStore> store);

  bool consistent() const { return saturation_.realization.consistent; }
  /// Store revision the snapshot was computed at.
  std::uint64_t revision() const { return store_->revision(); }
  const AxiomStore& store() const { return *store_; }
  const SubsumptionSet& subsumptions() const { return saturation_.subsumptions; }
  const Realization& realization() const { return saturation_.realization; }
  const Hierarchy& hierarchy() const { return hierarchy_; }

  /// Sorted classes of `individual`; owl:Thing only if `include_top`.
  /// Throws kInconsistentOntology, kUnknownEntity.
  std::vector<EntityName> types_of(const EntityName& individual, bool direct,
                                   bool include_top = false) const;
  /// Throws kInconsistentOntology.
  std::vector<EntityName> instances_of(const ClassExpression& expr, bool direct) const;
  /// Asserted fillers of `role` and of its sub-roles. Throws kUnknownEntity.
  std::vector<EntityName> property_values(const EntityName& subject,
                                          const EntityName& role) const;
  /// Direct neighbours of a named class; owl:Thing/owl:Nothing are left
  /// out. Throws kInconsistentOntology, kUnknownEntity.
  std::vector<EntityName> hierarchy_neighbours(const EntityName& cls,
                                               HierarchyRelation relation) const;

 private:
  Inference(std::shared_ptr<const AxiomStore> store, Saturation saturation);

  std::shared_ptr<const AxiomStore> store_;
  Saturation saturation_;
  Hierarchy hierarchy_;
};

}  // namespace armordb
