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


#include <map>
#include <string>

#include "armordb/error.hpp"
#include "armordb/reasoner.hpp"

namespace armordb {

namespace {

using Shape = NormalizedTBox::Shape;
using NodeKind = NormalizedTBox::NodeKind;

class Normalizer {
 public:
  explicit Normalizer(NormalizedTBox& out) : out_(out) {
    out_.concept_names = {"owl:Thing", "owl:Nothing"};
    out_.concept_kinds = {NodeKind::kTop, NodeKind::kBottom};
  }

  void run(std::span<const Axiom> axioms, std::span<const ClassExpression> queries,
           std::vector<int>* query_ids) {
    // Register the signature first so that named classes get stable,
    // sorted ids independent of axiom order.
    std::set<EntityName> classes, roles, individuals;
    for (const auto& a : axioms) collect(a, classes, roles, individuals);
    for (const auto& q : queries) collect_expr(q, classes, roles);
    for (const auto& c : classes) class_id(c);
    for (const auto& r : roles) role_id(r);
    for (const auto& i : individuals) individual_id(i);

    for (const auto& a : axioms) translate(a);
    for (const auto& q : queries) {
      int id = fresh("gen:q" + std::to_string(++query_counter_));
      emit_lhs(q, id);
      emit_rhs(id, q);
      if (query_ids) query_ids->push_back(id);
    }
    compile_ranges();
  }

 private:
  static void collect_expr(const ClassExpression& c, std::set<EntityName>& classes,
                           std::set<EntityName>& roles) {
    switch (c.kind()) {
      case ClassExpression::Kind::kNamed:
        classes.insert(c.name());
        break;
      case ClassExpression::Kind::kExistential:
        roles.insert(c.name());
        collect_expr(c.filler(), classes, roles);
        break;
      case ClassExpression::Kind::kIntersection:
        for (const auto& op : c.operands()) collect_expr(op, classes, roles);
        break;
      default:
        break;
    }
  }

  static void collect(const Axiom& a, std::set<EntityName>& classes, std::set<EntityName>& roles,
                      std::set<EntityName>& individuals) {
    for (const auto& c : a.classes()) collect_expr(c, classes, roles);
    auto names = a.names();
    switch (a.kind()) {
      case Axiom::Kind::kDeclaration:
        switch (a.declared_kind()) {
          case EntityKind::kClass:
            if (!names[0].is_reserved()) classes.insert(names[0]);
            break;
          case EntityKind::kRole:
            roles.insert(names[0]);
            break;
          case EntityKind::kIndividual:
            individuals.insert(names[0]);
            break;
        }
        break;
      case Axiom::Kind::kSubObjectPropertyOf:
        roles.insert(names.begin(), names.end());
        break;
      case Axiom::Kind::kObjectPropertyDomain:
      case Axiom::Kind::kObjectPropertyRange:
        roles.insert(names[0]);
        break;
      case Axiom::Kind::kClassAssertion:
        individuals.insert(names[0]);
        break;
      case Axiom::Kind::kObjectPropertyAssertion:
        roles.insert(names[0]);
        individuals.insert(names[1]);
        individuals.insert(names[2]);
        break;
      default:
        break;
    }
  }

  int fresh(std::string name, NodeKind kind = NodeKind::kAuxiliary) {
    out_.concept_names.push_back(std::move(name));
    out_.concept_kinds.push_back(kind);
    return static_cast<int>(out_.concept_names.size()) - 1;
  }

  int fresh_aux() { return fresh("gen:" + std::to_string(++aux_counter_)); }

  int class_id(const EntityName& n) {
    auto [it, inserted] = classes_.try_emplace(n, 0);
    if (inserted) it->second = fresh(n.str(), NodeKind::kClass);
    return it->second;
  }

  int individual_id(const EntityName& n) {
    auto [it, inserted] = individuals_.try_emplace(n, 0);
    if (inserted) it->second = fresh("{" + n.str() + "}", NodeKind::kIndividual);
    return it->second;
  }

  int role_id(const EntityName& n) {
    auto [it, inserted] = roles_.try_emplace(n, 0);
    if (inserted) {
      out_.role_names.push_back(n);
      it->second = static_cast<int>(out_.role_names.size()) - 1;
    }
    return it->second;
  }

  void add(Shape shape, int lhs, int lhs2, int role, int rhs) {
    NormalizedTBox::Inclusion inc{shape, lhs, lhs2, role, rhs};
    if (seen_.insert(out_.to_string(inc)).second) out_.inclusions.push_back(inc);
  }

  void translate(const Axiom& a) {
    auto cs = a.classes();
    auto names = a.names();
    switch (a.kind()) {
      case Axiom::Kind::kSubClassOf:
        sub(cs[0], cs[1]);
        break;
      case Axiom::Kind::kEquivalentClasses:
        for (std::size_t i = 1; i < cs.size(); ++i) {
          sub(cs[0], cs[i]);
          sub(cs[i], cs[0]);
        }
        break;
      case Axiom::Kind::kDisjointClasses:
        for (std::size_t i = 0; i < cs.size(); ++i) {
          for (std::size_t j = i + 1; j < cs.size(); ++j) {
            emit_lhs(ClassExpression::intersection({cs[i], cs[j]}), NormalizedTBox::kBottom);
          }
        }
        break;
      case Axiom::Kind::kSubObjectPropertyOf:
        out_.role_inclusions.emplace_back(role_id(names[0]), role_id(names[1]));
        break;
      case Axiom::Kind::kObjectPropertyDomain:
        emit_lhs_then_rhs(ClassExpression::existential(names[0], ClassExpression::top()), cs[0]);
        break;
      case Axiom::Kind::kObjectPropertyRange:
        ranges_[role_id(names[0])].push_back(cs[0]);
        break;
      case Axiom::Kind::kDeclaration:
        break;
      case Axiom::Kind::kClassAssertion:
        emit_rhs(individual_id(names[0]), cs[0]);
        break;
      case Axiom::Kind::kObjectPropertyAssertion:
        out_.edges.emplace_back(individual_id(names[1]), role_id(names[0]),
                                individual_id(names[2]));
        break;
    }
  }

  void emit_lhs_then_rhs(const ClassExpression& c, const ClassExpression& d) { sub(c, d); }

  static bool atomic(const ClassExpression& c) {
    auto k = c.kind();
    return k == ClassExpression::Kind::kNamed || k == ClassExpression::Kind::kTop ||
           k == ClassExpression::Kind::kBottom;
  }

  int atom_id(const ClassExpression& c) {
    switch (c.kind()) {
      case ClassExpression::Kind::kTop:
        return NormalizedTBox::kTop;
      case ClassExpression::Kind::kBottom:
        return NormalizedTBox::kBottom;
      default:
        return class_id(c.name());
    }
  }

  // C ⊑ D
  void sub(const ClassExpression& c, const ClassExpression& d) {
    if (d.kind() == ClassExpression::Kind::kTop || c.kind() == ClassExpression::Kind::kBottom) {
      return;
    }
    if (atomic(d)) {
      emit_lhs(c, atom_id(d));
    } else {
      emit_rhs(lhs_atom(c), d);
    }
  }

  // C ⊑ d for an atom d.
  void emit_lhs(const ClassExpression& c, int d) {
    switch (c.kind()) {
      case ClassExpression::Kind::kBottom:
        return;
      case ClassExpression::Kind::kTop:
      case ClassExpression::Kind::kNamed:
        if (atom_id(c) != d) add(Shape::kAtomic, atom_id(c), -1, -1, d);
        return;
      case ClassExpression::Kind::kIntersection: {
        auto ops = c.operands();
        int acc = lhs_atom(ops[0]);
        for (std::size_t i = 1; i < ops.size(); ++i) {
          int next = lhs_atom(ops[i]);
          int target = (i + 1 == ops.size()) ? d : fresh_aux();
          add(Shape::kConjunction, acc, next, -1, target);
          acc = target;
        }
        return;
      }
      case ClassExpression::Kind::kExistential: {
        if (c.filler().kind() == ClassExpression::Kind::kBottom) return;
        add(Shape::kExistsLeft, lhs_atom(c.filler()), -1, role_id(c.name()), d);
        return;
      }
    }
  }

  // An atom X with C ⊑ X.
  int lhs_atom(const ClassExpression& c) {
    if (atomic(c)) return atom_id(c);
    auto it = lhs_memo_.find(c.text());
    if (it != lhs_memo_.end()) return it->second;
    int x = fresh_aux();
    lhs_memo_.emplace(c.text(), x);
    emit_lhs(c, x);
    return x;
  }

  // a ⊑ D
  void emit_rhs(int a, const ClassExpression& d) {
    switch (d.kind()) {
      case ClassExpression::Kind::kTop:
        return;
      case ClassExpression::Kind::kBottom:
      case ClassExpression::Kind::kNamed:
        if (atom_id(d) != a) add(Shape::kAtomic, a, -1, -1, atom_id(d));
        return;
      case ClassExpression::Kind::kIntersection:
        for (const auto& op : d.operands()) emit_rhs(a, op);
        return;
      case ClassExpression::Kind::kExistential:
        add(Shape::kExistsRight, a, -1, role_id(d.name()), rhs_atom(d.filler()));
        return;
    }
  }

  // An atom Y with Y ⊑ C.
  int rhs_atom(const ClassExpression& c) {
    if (atomic(c)) return atom_id(c);
    auto it = rhs_memo_.find(c.text());
    if (it != rhs_memo_.end()) return it->second;
    int y = fresh_aux();
    rhs_memo_.emplace(c.text(), y);
    emit_rhs(y, c);
    return y;
  }

  // Range(r, C): every r-successor is a C. Existential successors are
  // specialised to an auxiliary node below the filler and every range of
  // r and its super-roles; asserted successors get the ranges directly.
  void compile_ranges() {
    if (ranges_.empty()) return;
    const int nroles = static_cast<int>(out_.role_names.size());
    std::vector<std::set<int>> supers(nroles);
    for (int r = 0; r < nroles; ++r) supers[r].insert(r);
    for (bool grew = true; grew;) {
      grew = false;
      for (auto [s, t] : out_.role_inclusions) {
        for (int r = 0; r < nroles; ++r) {
          if (supers[r].count(s) && supers[r].insert(t).second) grew = true;
        }
      }
    }
    std::vector<std::vector<ClassExpression>> closed(nroles);
    for (int r = 0; r < nroles; ++r) {
      for (int s : supers[r]) {
        auto it = ranges_.find(s);
        if (it != ranges_.end()) closed[r].insert(closed[r].end(), it->second.begin(), it->second.end());
      }
    }
    for (auto [subject, role, object] : out_.edges) {
      for (const auto& c : closed[role]) emit_rhs(object, c);
    }
    std::map<std::pair<int, int>, int> specialised;
    for (std::size_t i = 0; i < out_.inclusions.size(); ++i) {
      auto inc = out_.inclusions[i];
      if (inc.shape != Shape::kExistsRight || closed[inc.role].empty()) continue;
      auto key = std::make_pair(inc.role, inc.rhs);
      auto it = specialised.find(key);
      int z;
      if (it == specialised.end()) {
        z = fresh_aux();
        specialised.emplace(key, z);
        add(Shape::kAtomic, z, -1, -1, inc.rhs);
        for (const auto& c : closed[inc.role]) emit_rhs(z, c);
      } else {
        z = it->second;
      }
      out_.inclusions[i].rhs = z;
    }
  }

  NormalizedTBox& out_;
  std::map<EntityName, int> classes_, individuals_, roles_;
  std::map<std::string, int, std::less<>> lhs_memo_, rhs_memo_;
  std::map<int, std::vector<ClassExpression>> ranges_;
  std::set<std::string, std::less<>> seen_;
  int aux_counter_ = 0;
  int query_counter_ = 0;
};

}  // namespace

std::string NormalizedTBox::to_string(const Inclusion& inc) const {
  const auto& n = concept_names;
  switch (inc.shape) {
    case Shape::kAtomic:
      return n[inc.lhs] + " ⊑ " + n[inc.rhs];
    case Shape::kConjunction:
      return n[inc.lhs] + " ⊓ " + n[inc.lhs2] + " ⊑ " + n[inc.rhs];
    case Shape::kExistsRight:
      return n[inc.lhs] + " ⊑ ∃" + role_names[inc.role].str() + "." + n[inc.rhs];
    case Shape::kExistsLeft:
      return "∃" + role_names[inc.role].str() + "." + n[inc.lhs] + " ⊑ " + n[inc.rhs];
  }
  return {};
}

std::vector<std::string> NormalizedTBox::to_strings() const {
  std::vector<std::string> out;
  for (const auto& inc : inclusions) out.push_back(to_string(inc));
  for (auto [s, t] : role_inclusions) out.push_back(role_names[s].str() + " ⊑ " + role_names[t].str());
  std::sort(out.begin(), out.end());
  return out;
}

int NormalizedTBox::find_class(const EntityName& name) const {
  for (std::size_t i = 0; i < concept_names.size(); ++i) {
    if (concept_kinds[i] == NodeKind::kClass && concept_names[i] == name.str()) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int NormalizedTBox::find_individual(const EntityName& name) const {
  const std::string key = "{" + name.str() + "}";
  for (std::size_t i = 0; i < concept_names.size(); ++i) {
    if (concept_kinds[i] == NodeKind::kIndividual && concept_names[i] == key) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

NormalizedTBox normalize(std::span<const Axiom> axioms, std::span<const ClassExpression> queries,
                         std::vector<int>* query_ids) {
  NormalizedTBox out;
  Normalizer(out).run(axioms, queries, query_ids);
  return out;
}

}  // namespace armordb
