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
#include <set>
#include <string>
#include <vector>

#include "armordb/model.hpp"

namespace armordb {

enum class ChangeOp { kAdd, kRemove };

struct Change {
  ChangeOp op;
  Axiom axiom;
};

/// Set of axioms with a signature index and a revision counter. The
/// revision moves by one per mutation batch that changed anything.
class AxiomStore {
 public:
  using AxiomSet = std::set<Axiom, AxiomLess>;
  using TextSet = std::set<std::string, std::less<>>;

  /// Groups several mutations under a single revision bump.
  class Batch {
   public:
    explicit Batch(AxiomStore& store) : store_(store) {}
    Batch(const Batch&) = delete;
    Batch& operator=(const Batch&) = delete;
    ~Batch() {
      if (changed_) ++store_.revision_;
    }

    /// Throws Error(kReservedName) before touching the store.
    bool add(const Axiom& a);
    bool remove(const Axiom& a);
    bool apply(const Change& c) { return c.op == ChangeOp::kAdd ? add(c.axiom) : remove(c.axiom); }
    bool changed() const { return changed_; }

   private:
    AxiomStore& store_;
    bool changed_ = false;
  };

  bool add(const Axiom& a);
  bool remove(const Axiom& a);

  /// Removes (role subject old) and adds (role subject new) as one batch.
  bool replace_property_value(const EntityName& role, const EntityName& subject,
                              const EntityName& new_object, const EntityName& old_object);

  bool contains(const Axiom& a) const { return axioms_.count(a.text()) > 0; }
  bool mentions(const EntityName& n) const { return index_.count(n) > 0; }
  /// Texts of the axioms mentioning `n`; empty when none do.
  const TextSet& axioms_mentioning(const EntityName& n) const;

  const AxiomSet& axioms() const { return axioms_; }
  const std::map<EntityName, TextSet>& signature_index() const { return index_; }
  std::size_t size() const { return axioms_.size(); }
  std::uint64_t revision() const { return revision_; }

  /// Axiom-set equality, ignoring revisions.
  bool same_axioms(const AxiomStore& other) const { return axioms_ == other.axioms_; }

 private:
  bool insert(const Axiom& a);
  bool erase(const Axiom& a);

  AxiomSet axioms_;
  std::map<EntityName, TextSet> index_;
  std::uint64_t revision_ = 0;
};

/// Manipulations waiting for an explicit flush, in submission order.
class ChangeBuffer {
 public:
  void push(Change c) { pending_.push_back(std::move(c)); }
  const std::vector<Change>& pending() const { return pending_; }
  std::size_t size() const { return pending_.size(); }
  bool empty() const { return pending_.empty(); }
  void clear() { pending_.clear(); }
  /// Drops the first `n` entries.
  void consume(std::size_t n);

 private:
  std::vector<Change> pending_;
};

/// Appends to `buf` when buffered, otherwise applies to `store` as one
/// batch. Returns whether the store was touched.
bool buffer_or_apply(AxiomStore& store, ChangeBuffer& buf, bool buffered, const Change& change);

/// Applies every pending change in order as one batch and empties the
/// buffer. If an entry throws, the entries before it stay applied and the
/// buffer keeps the failing entry onward. Returns the number applied.
std::size_t flush(AxiomStore& store, ChangeBuffer& buf);

}  // namespace armordb
