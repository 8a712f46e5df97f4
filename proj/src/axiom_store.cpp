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


#include "armordb/axiom_store.hpp"

namespace armordb {

bool AxiomStore::insert(const Axiom& a) {
  auto [it, inserted] = axioms_.insert(a);
  if (!inserted) return false;
  for (const auto& n : a.signature()) index_[n].insert(a.text());
  return true;
}

bool AxiomStore::erase(const Axiom& a) {
  auto it = axioms_.find(a.text());
  if (it == axioms_.end()) return false;
  for (const auto& n : it->signature()) {
    auto entry = index_.find(n);
    entry->second.erase(a.text());
    if (entry->second.empty()) index_.erase(entry);
  }
  axioms_.erase(it);
  return true;
}

bool AxiomStore::Batch::add(const Axiom& a) {
  a.check_reserved();
  bool c = store_.insert(a);
  changed_ = changed_ || c;
  return c;
}

bool AxiomStore::Batch::remove(const Axiom& a) {
  bool c = store_.erase(a);
  changed_ = changed_ || c;
  return c;
}

bool AxiomStore::add(const Axiom& a) {
  Batch batch(*this);
  return batch.add(a);
}

bool AxiomStore::remove(const Axiom& a) {
  Batch batch(*this);
  return batch.remove(a);
}

bool AxiomStore::replace_property_value(const EntityName& role, const EntityName& subject,
                                        const EntityName& new_object,
                                        const EntityName& old_object) {
  auto old_axiom = Axiom::object_property_assertion(role, subject, old_object);
  auto new_axiom = Axiom::object_property_assertion(role, subject, new_object);
  new_axiom.check_reserved();
  Batch batch(*this);
  if (old_axiom == new_axiom) return batch.add(new_axiom);
  bool removed = batch.remove(old_axiom);
  bool added = batch.add(new_axiom);
  return removed || added;
}

const AxiomStore::TextSet& AxiomStore::axioms_mentioning(const EntityName& n) const {
  static const TextSet kEmpty;
  auto it = index_.find(n);
  return it == index_.end() ? kEmpty : it->second;
}

void ChangeBuffer::consume(std::size_t n) {
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(n));
}

bool buffer_or_apply(AxiomStore& store, ChangeBuffer& buf, bool buffered, const Change& change) {
  if (buffered) {
    buf.push(change);
    return false;
  }
  AxiomStore::Batch batch(store);
  batch.apply(change);
  return true;
}

std::size_t flush(AxiomStore& store, ChangeBuffer& buf) {
  std::size_t applied = 0;
  try {
    AxiomStore::Batch batch(store);
    for (const auto& c : buf.pending()) {
      batch.apply(c);
      ++applied;
    }
  } catch (...) {
    buf.consume(applied);
    throw;
  }
  buf.clear();
  return applied;
}

}  // namespace armordb
