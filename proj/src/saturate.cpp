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


#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "armordb/reasoner.hpp"

namespace armordb {

using Shape = NormalizedTBox::Shape;
using NodeKind = NormalizedTBox::NodeKind;

/// Worklist implementation of the completion rules over one normalized
/// TBox. S(X) holds the atoms subsuming node X; R(r) holds the r-edges,
/// kept closed under the role hierarchy.
struct Saturator {
  explicit Saturator(const NormalizedTBox& tbox)
      : tbox_(tbox),
        nodes_(static_cast<int>(tbox.concept_names.size())),
        nroles_(static_cast<int>(tbox.role_names.size())),
        told_(nodes_),
        conj_(nodes_),
        exists_right_(nodes_),
        exists_left_(nodes_),
        subsumers_(nodes_),
        preds_(nroles_, std::vector<std::unordered_set<int>>(nodes_)),
        super_roles_(nroles_) {
    for (const auto& inc : tbox.inclusions) {
      switch (inc.shape) {
        case Shape::kAtomic:
          told_[inc.lhs].push_back(inc.rhs);
          break;
        case Shape::kConjunction:
          conj_[inc.lhs].emplace_back(inc.lhs2, inc.rhs);
          if (inc.lhs2 != inc.lhs) conj_[inc.lhs2].emplace_back(inc.lhs, inc.rhs);
          break;
        case Shape::kExistsRight:
          exists_right_[inc.lhs].emplace_back(inc.role, inc.rhs);
          break;
        case Shape::kExistsLeft:
          exists_left_[inc.lhs].emplace_back(inc.role, inc.rhs);
          break;
      }
    }
    // Reflexive-transitive closure of the told role inclusions.
    std::vector<std::set<int>> sup(nroles_);
    for (int r = 0; r < nroles_; ++r) sup[r].insert(r);
    for (bool grew = true; grew;) {
      grew = false;
      for (auto [s, t] : tbox.role_inclusions) {
        for (int r = 0; r < nroles_; ++r) {
          if (sup[r].count(s) && sup[r].insert(t).second) grew = true;
        }
      }
    }
    for (int r = 0; r < nroles_; ++r) super_roles_[r].assign(sup[r].begin(), sup[r].end());
  }

  void run() {
    for (int x = 0; x < nodes_; ++x) {
      push(x, x);
      push(x, NormalizedTBox::kTop);
    }
    for (auto [s, r, o] : tbox_.edges) edge_queue_.emplace_back(s, r, o);
    while (!queue_.empty() || !edge_queue_.empty()) {
      if (!queue_.empty()) {
        auto [x, a] = queue_.front();
        queue_.pop_front();
        process(x, a);
      } else {
        auto [x, r, y] = edge_queue_.front();
        edge_queue_.pop_front();
        process_edge(x, r, y);
      }
    }
  }

  bool has(int x, int a) const { return subsumers_[x].count(a) > 0; }
  bool unsatisfiable(int x) const { return has(x, NormalizedTBox::kBottom); }

  void push(int x, int a) {
    if (!has(x, a)) queue_.emplace_back(x, a);
  }

  void process(int x, int a) {
    if (!subsumers_[x].insert(a).second) return;
    for (int b : told_[a]) push(x, b);
    for (auto [other, b] : conj_[a]) {
      if (has(x, other)) push(x, b);
    }
    for (auto [r, b] : exists_right_[a]) edge_queue_.emplace_back(x, r, b);
    for (auto [r, b] : exists_left_[a]) {
      for (int p : preds_[r][x]) push(p, b);
    }
    if (a == NormalizedTBox::kBottom) {
      for (int r = 0; r < nroles_; ++r) {
        for (int p : preds_[r][x]) push(p, NormalizedTBox::kBottom);
      }
    }
  }

  void process_edge(int x, int r, int y) {
    for (int s : super_roles_[r]) {
      if (!preds_[s][y].insert(x).second) continue;
      for (int a : subsumers_[y]) {
        for (auto [role, b] : exists_left_[a]) {
          if (role == s) push(x, b);
        }
      }
      if (unsatisfiable(y)) push(x, NormalizedTBox::kBottom);
    }
  }

  Saturation result(const std::vector<int>& query_ids) const {
    Saturation out;
    auto& subs = out.subsumptions;
    auto& real = out.realization;

    std::vector<int> class_nodes;  // Top, Bottom and named classes
    for (int x = 0; x < nodes_; ++x) {
      auto k = tbox_.concept_kinds[x];
      if (k == NodeKind::kTop || k == NodeKind::kBottom || k == NodeKind::kClass) {
        class_nodes.push_back(x);
        subs.classes_.insert(name_of(x));
      }
    }
    for (int r = 0; r < nroles_; ++r) {
      for (int s : super_roles_[r]) subs.role_pairs_.emplace(tbox_.role_names[r], tbox_.role_names[s]);
    }

    real.consistent = !unsatisfiable(NormalizedTBox::kTop);
    for (int x = 0; x < nodes_; ++x) {
      if (tbox_.concept_kinds[x] == NodeKind::kIndividual && unsatisfiable(x)) {
        real.consistent = false;
      }
    }

    auto sups_of = [&](int x) {
      std::set<EntityName> out;
      if (!real.consistent || unsatisfiable(x)) return subs.classes_;
      for (int c : class_nodes) {
        if (has(x, c)) out.insert(name_of(c));
      }
      return out;
    };

    for (int x : class_nodes) {
      for (const auto& s : sups_of(x)) subs.pairs_.emplace(name_of(x), s);
    }
    for (int x = 0; x < nodes_; ++x) {
      if (tbox_.concept_kinds[x] != NodeKind::kIndividual) continue;
      const auto& label = tbox_.concept_names[x];
      real.types[EntityName::parse(std::string_view(label).substr(1, label.size() - 2))] = sups_of(x);
    }
    for (int q : query_ids) {
      Saturation::QueryResult qr;
      qr.supers = sups_of(q);
      for (int x = 0; x < nodes_; ++x) {
        bool below = !real.consistent || has(x, q) || unsatisfiable(x);
        if (!below) continue;
        auto k = tbox_.concept_kinds[x];
        if (k == NodeKind::kIndividual) {
          const auto& label = tbox_.concept_names[x];
          qr.instances.insert(EntityName::parse(std::string_view(label).substr(1, label.size() - 2)));
        } else if (k == NodeKind::kClass || k == NodeKind::kTop || k == NodeKind::kBottom) {
          qr.subs.insert(name_of(x));
        }
      }
      out.queries.push_back(std::move(qr));
    }
    return out;
  }

  EntityName name_of(int x) const {
    if (x == NormalizedTBox::kTop) return thing_name();
    if (x == NormalizedTBox::kBottom) return nothing_name();
    return EntityName::parse(tbox_.concept_names[x]);
  }

  const NormalizedTBox& tbox_;
  int nodes_;
  int nroles_;
  std::vector<std::vector<int>> told_;
  std::vector<std::vector<std::pair<int, int>>> conj_;
  std::vector<std::vector<std::pair<int, int>>> exists_right_;
  std::vector<std::vector<std::pair<int, int>>> exists_left_;  // filler -> (role, rhs)
  std::vector<std::unordered_set<int>> subsumers_;
  std::vector<std::vector<std::unordered_set<int>>> preds_;  // role -> node -> predecessors
  std::vector<std::vector<int>> super_roles_;
  std::deque<std::pair<int, int>> queue_;
  std::deque<std::tuple<int, int, int>> edge_queue_;
};

Saturation saturate(std::span<const Axiom> axioms, std::span<const ClassExpression> queries) {
  std::vector<int> query_ids;
  NormalizedTBox tbox = normalize(axioms, queries, &query_ids);
  Saturator sat(tbox);
  sat.run();
  return sat.result(query_ids);
}

}  // namespace armordb
