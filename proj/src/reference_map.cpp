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


#include "armordb/reference_map.hpp"

#include <algorithm>

namespace armordb {

namespace {

[[noreturn]] void busy(const std::string& ref, const std::string& holder) {
  throw Error(ErrorCode::kReferenceBusy, "reference '" + ref + "' is mounted by '" + holder + "'");
}

}  // namespace

std::vector<EntityName> run_query(const Snapshot& snapshot, const Query& query) {
  const Inference& inf = *snapshot.inference;
  return std::visit(
      [&](const auto& q) -> std::vector<EntityName> {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, InstancesQuery>) {
          return inf.instances_of(q.cls, q.direct);
        } else if constexpr (std::is_same_v<Q, TypesQuery>) {
          return inf.types_of(q.individual, q.direct);
        } else if constexpr (std::is_same_v<Q, HierarchyQuery>) {
          return inf.hierarchy_neighbours(q.cls, q.relation);
        } else {
          return inf.property_values(q.subject, q.role);
        }
      },
      query);
}

OntologyRef::OntologyRef(std::string name, RefFlags flags, bool mandatory_mount)
    : name_(std::move(name)), mandatory_mount_(mandatory_mount), flags_(flags) {
  std::lock_guard lock(write_mu_);
  publish_locked(true);
}

void OntologyRef::mount(const std::string& client) {
  std::lock_guard lock(write_mu_);
  if (lease_ && *lease_ != client) busy(name_, *lease_);
  lease_ = client;
}

void OntologyRef::unmount(const std::string& client) {
  std::lock_guard lock(write_mu_);
  if (!lease_) {
    throw Error(ErrorCode::kNotLeaseHolder, "reference '" + name_ + "' is not mounted");
  }
  if (*lease_ != client) {
    throw Error(ErrorCode::kNotLeaseHolder,
                "reference '" + name_ + "' is mounted by '" + *lease_ + "', not '" + client + "'");
  }
  lease_.reset();
}

std::optional<std::string> OntologyRef::force_unmount() {
  std::lock_guard lock(write_mu_);
  return std::exchange(lease_, std::nullopt);
}

std::optional<std::string> OntologyRef::lease() const {
  std::lock_guard lock(write_mu_);
  return lease_;
}

bool OntologyRef::held_by(const std::string& client) const {
  std::lock_guard lock(write_mu_);
  return lease_ && *lease_ == client;
}

void OntologyRef::check_manipulable(const std::string& client) const {
  if (lease_ && *lease_ != client) busy(name_, *lease_);
  if (mandatory_mount_ && !lease_) {
    throw Error(ErrorCode::kReferenceBusy,
                "reference '" + name_ + "' must be mounted before it can be manipulated");
  }
}

RefStatus OntologyRef::manipulate(const std::string& client, const std::vector<Change>& changes) {
  return load(client, changes, {});
}

RefStatus OntologyRef::load(const std::string& client, const std::vector<Change>& changes,
                            const std::map<std::string, std::string>& prefixes) {
  std::lock_guard lock(write_mu_);
  check_manipulable(client);
  for (const Change& c : changes) {
    if (c.op == ChangeOp::kAdd) c.axiom.check_reserved();
  }
  for (const auto& [p, iri] : prefixes) prefixes_.insert_or_assign(p, iri);
  if (flags_.buffered_manipulation) {
    for (const Change& c : changes) buffer_.push(c);
    publish_locked(false);
    return status_locked(false);
  }
  bool changed = false;
  {
    AxiomStore::Batch batch(store_);
    for (const Change& c : changes) batch.apply(c);
    changed = batch.changed();
  }
  publish_locked(changed && flags_.continuous_reasoner_update);
  return status_locked(true);
}

RefStatus OntologyRef::flush_locked(bool reason) {
  flush(store_, buffer_);
  publish_locked(reason || flags_.continuous_reasoner_update);
  return status_locked(true);
}

RefStatus OntologyRef::reason(const std::string& client) {
  std::lock_guard lock(write_mu_);
  if (!buffer_.empty()) check_manipulable(client);
  return flush_locked(true);
}

RefStatus OntologyRef::apply(const std::string& client) {
  std::lock_guard lock(write_mu_);
  if (!buffer_.empty()) check_manipulable(client);
  return flush_locked(false);
}

RefFlags OntologyRef::flags() const {
  std::lock_guard lock(write_mu_);
  return flags_;
}

RefStatus OntologyRef::set_flags(const std::string& client, RefFlags flags) {
  std::lock_guard lock(write_mu_);
  return set_flags_locked(client, flags);
}

RefStatus OntologyRef::configure(const std::string& client, std::string_view flag, bool value) {
  std::lock_guard lock(write_mu_);
  RefFlags next = flags_;
  if (flag == "buffered_manipulation") {
    next.buffered_manipulation = value;
  } else if (flag == "continuous_reasoner_update") {
    next.continuous_reasoner_update = value;
  } else {
    throw Error(ErrorCode::kMalformedRequest, "unknown flag '" + std::string(flag) + "'");
  }
  return set_flags_locked(client, next);
}

RefStatus OntologyRef::set_flags_locked(const std::string& client, RefFlags flags) {
  check_manipulable(client);
  flags_ = flags;
  // Turning continuous updates back on must not leave queries stale.
  publish_locked(flags_.continuous_reasoner_update);
  return status_locked(true);
}

std::size_t OntologyRef::pending() const {
  std::lock_guard lock(write_mu_);
  return buffer_.size();
}

std::shared_ptr<const Snapshot> OntologyRef::snapshot() const {
  std::lock_guard lock(publish_mu_);
  return published_;
}

RefStatus OntologyRef::status() const {
  auto snap = snapshot();
  return RefStatus{snap->inference->consistent(), true, snap->store->revision()};
}

void OntologyRef::publish_locked(bool recompute) {
  auto old = snapshot();
  auto next = std::make_shared<Snapshot>();
  if (old && old->store->revision() == store_.revision()) {
    next->store = old->store;
  } else {
    next->store = std::make_shared<const AxiomStore>(store_);
  }
  if (old && (!recompute || old->inference->revision() == store_.revision())) {
    next->inference = old->inference;
  } else {
    next->inference = Inference::compute(next->store);
  }
  next->prefixes = prefixes_;
  std::lock_guard lock(publish_mu_);
  published_ = std::move(next);
}

RefStatus OntologyRef::status_locked(bool applied) const {
  std::lock_guard lock(publish_mu_);
  return RefStatus{published_->inference->consistent(), applied, store_.revision()};
}

std::shared_ptr<OntologyRef> ReferenceMap::create(const std::string& name) {
  return create(name, options_.default_flags);
}

std::shared_ptr<OntologyRef> ReferenceMap::create(const std::string& name, RefFlags flags) {
  std::unique_lock lock(mu_);
  if (refs_.count(name)) {
    throw Error(ErrorCode::kDuplicateReference, "reference '" + name + "' already exists");
  }
  auto ref = std::make_shared<OntologyRef>(name, flags, options_.mandatory_mount);
  refs_.emplace(name, ref);
  return ref;
}

void ReferenceMap::drop(const std::string& client, const std::string& name) {
  std::unique_lock lock(mu_);
  auto it = refs_.find(name);
  if (it == refs_.end()) throw Error(ErrorCode::kUnknownReference, "unknown reference '" + name + "'");
  if (auto holder = it->second->lease(); holder && *holder != client) busy(name, *holder);
  refs_.erase(it);
}

std::shared_ptr<OntologyRef> ReferenceMap::get(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = refs_.find(name);
  if (it == refs_.end()) throw Error(ErrorCode::kUnknownReference, "unknown reference '" + name + "'");
  return it->second;
}

std::vector<std::string> ReferenceMap::names() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [name, ref] : refs_) out.push_back(name);
  return out;
}

}  // namespace armordb
