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


#include <algorithm>

#include "armordb/error.hpp"
#include "armordb/reasoner.hpp"

namespace armordb {

// --- Hierarchy --------------------------------------------------------------

Hierarchy::Hierarchy(const SubsumptionSet& subs) {
  for (const auto& c : subs.classes()) {
    if (group_index_.count(c)) continue;
    std::vector<EntityName> group;
    for (const auto& d : subs.classes()) {
      if (subs.contains(c, d) && subs.contains(d, c)) group.push_back(d);
    }
    for (const auto& d : group) group_index_.emplace(d, groups_.size());
    groups_.push_back(std::move(group));
  }
  const std::size_t n = groups_.size();
  auto leq = [&](std::size_t a, std::size_t b) {
    return subs.contains(groups_[a].front(), groups_[b].front());
  };
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<std::size_t> above;
    for (std::size_t h = 0; h < n; ++h) {
      if (h != g && leq(g, h)) above.push_back(h);
    }
    for (std::size_t h : above) {
      bool direct = std::none_of(above.begin(), above.end(),
                                 [&](std::size_t k) { return k != h && leq(k, h); });
      if (direct) edges_.emplace(g, h);
    }
  }
}

const std::vector<EntityName>& Hierarchy::group_of(const EntityName& name) const {
  return groups_.at(group_index_.at(name));
}

std::vector<std::vector<EntityName>> Hierarchy::direct_supers(const EntityName& name) const {
  std::vector<std::vector<EntityName>> out;
  std::size_t g = group_index_.at(name);
  for (auto [sub, sup] : edges_) {
    if (sub == g) out.push_back(groups_[sup]);
  }
  return out;
}

std::vector<std::vector<EntityName>> Hierarchy::direct_subs(const EntityName& name) const {
  std::vector<std::vector<EntityName>> out;
  std::size_t g = group_index_.at(name);
  for (auto [sub, sup] : edges_) {
    if (sup == g) out.push_back(groups_[sub]);
  }
  return out;
}

// --- Inference --------------------------------------------------------------

namespace {

std::vector<EntityName> sorted_user_names(const std::set<EntityName>& names) {
  std::vector<EntityName> out;
  for (const auto& n : names) {
    if (!n.is_reserved()) out.push_back(n);
  }
  return out;
}

// Elements of `set` with no strictly smaller element in `set`.
std::set<EntityName> minimal(const std::set<EntityName>& set, const SubsumptionSet& subs) {
  std::set<EntityName> out;
  for (const auto& t : set) {
    bool has_smaller = std::any_of(set.begin(), set.end(), [&](const EntityName& u) {
      return subs.contains(u, t) && !subs.contains(t, u);
    });
    if (!has_smaller) out.insert(t);
  }
  return out;
}

}  // namespace

Inference::Inference(std::shared_ptr<const AxiomStore> store, Saturation saturation)
    : store_(std::move(store)),
      saturation_(std::move(saturation)),
      hierarchy_(saturation_.subsumptions) {}

std::shared_ptr<const Inference> Inference::compute(std::shared_ptr<const AxiomStore> store) {
  std::vector<Axiom> axioms(store->axioms().begin(), store->axioms().end());
  auto sat = saturate(axioms);
  return std::shared_ptr<const Inference>(new Inference(std::move(store), std::move(sat)));
}

std::vector<EntityName> Inference::types_of(const EntityName& individual, bool direct,
                                            bool include_top) const {
  if (!consistent()) {
    throw Error(ErrorCode::kInconsistentOntology, "ontology is inconsistent");
  }
  if (!store_->mentions(individual)) {
    throw Error(ErrorCode::kUnknownEntity, "unknown individual " + individual.str());
  }
  std::set<EntityName> types;
  auto it = realization().types.find(individual);
  if (it != realization().types.end()) {
    types = it->second;
  } else {
    // Mentioned, but never in an individual position: only what holds for
    // every element.
    for (const auto& [sub, sup] : subsumptions().pairs()) {
      if (sub == thing_name()) types.insert(sup);
    }
  }
  if (direct) types = minimal(types, subsumptions());
  std::vector<EntityName> out;
  for (const auto& t : types) {
    if (t == thing_name() && !include_top) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<EntityName> Inference::instances_of(const ClassExpression& expr, bool direct) const {
  if (!consistent()) {
    throw Error(ErrorCode::kInconsistentOntology, "ontology is inconsistent");
  }
  const auto& types = realization().types;
  std::vector<EntityName> out;
  if (expr.kind() == ClassExpression::Kind::kTop || expr.is_named()) {
    const EntityName target = expr.is_named() ? expr.name() : thing_name();
    for (const auto& [ind, ts] : types) {
      if (!ts.count(target)) continue;
      if (direct && !minimal(ts, subsumptions()).count(target)) continue;
      out.push_back(ind);
    }
    return out;
  }
  if (expr.kind() == ClassExpression::Kind::kBottom) return out;

  std::vector<Axiom> axioms(store_->axioms().begin(), store_->axioms().end());
  const ClassExpression queries[] = {expr};
  auto sat = saturate(axioms, queries);
  const auto& q = sat.queries.front();
  for (const auto& ind : q.instances) {
    if (direct) {
      // Some named type of ind sits strictly below the query.
      const auto& ts = sat.realization.types.at(ind);
      bool below = std::any_of(ts.begin(), ts.end(), [&](const EntityName& t) {
        return q.subs.count(t) && !q.supers.count(t);
      });
      if (below) continue;
    }
    out.push_back(ind);
  }
  return out;
}

std::vector<EntityName> Inference::property_values(const EntityName& subject,
                                                   const EntityName& role) const {
  if (!store_->mentions(subject)) {
    throw Error(ErrorCode::kUnknownEntity, "unknown individual " + subject.str());
  }
  // Sub-roles from the told hierarchy of this snapshot.
  std::set<EntityName> sub_roles{role};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& a : store_->axioms()) {
      if (a.kind() == Axiom::Kind::kSubObjectPropertyOf && sub_roles.count(a.names()[1]) &&
          sub_roles.insert(a.names()[0]).second) {
        grew = true;
      }
    }
  }
  std::set<EntityName> values;
  for (const auto& text : store_->axioms_mentioning(subject)) {
    const Axiom& a = *store_->axioms().find(text);
    if (a.kind() != Axiom::Kind::kObjectPropertyAssertion) continue;
    auto n = a.names();
    if (n[1] == subject && sub_roles.count(n[0])) values.insert(n[2]);
  }
  return {values.begin(), values.end()};
}

std::vector<EntityName> Inference::hierarchy_neighbours(const EntityName& cls,
                                                        HierarchyRelation relation) const {
  if (!consistent()) {
    throw Error(ErrorCode::kInconsistentOntology, "ontology is inconsistent");
  }
  if (!hierarchy_.contains(cls)) {
    throw Error(ErrorCode::kUnknownEntity, "unknown class " + cls.str());
  }
  std::set<EntityName> names;
  switch (relation) {
    case HierarchyRelation::kEquiv:
      for (const auto& n : hierarchy_.group_of(cls)) {
        if (n != cls) names.insert(n);
      }
      break;
    case HierarchyRelation::kSup:
      for (const auto& g : hierarchy_.direct_supers(cls)) names.insert(g.begin(), g.end());
      break;
    case HierarchyRelation::kSub:
      for (const auto& g : hierarchy_.direct_subs(cls)) names.insert(g.begin(), g.end());
      break;
  }
  return sorted_user_names(names);
}

}  // namespace armordb
