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
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "armordb/axiom_store.hpp"
#include "armordb/error.hpp"
#include "armordb/model.hpp"
#include "armordb/reasoner.hpp"

namespace armordb {

struct RefFlags {
  bool buffered_manipulation = false;
  bool continuous_reasoner_update = true;

  friend bool operator==(const RefFlags&, const RefFlags&) = default;
};

/// Outcome of an operation that may touch the store.
struct RefStatus {
  bool consistent = true;
  bool applied = false;
  std::uint64_t revision = 0;
};

/// What queries read: the latest committed store and the inference last
/// computed, which lags the store when continuous updates are off.
struct Snapshot {
  std::shared_ptr<const AxiomStore> store;
  std::shared_ptr<const Inference> inference;
  std::map<std::string, std::string> prefixes;

  bool stale() const { return inference->revision() != store->revision(); }
};

struct InstancesQuery {
  ClassExpression cls;
  bool direct = false;
};
struct TypesQuery {
  EntityName individual;
  bool direct = false;
};
struct HierarchyQuery {
  EntityName cls;
  HierarchyRelation relation;
};
struct PropertyValuesQuery {
  EntityName role;
  EntityName subject;
};
using Query = std::variant<InstancesQuery, TypesQuery, HierarchyQuery, PropertyValuesQuery>;

/// Runs a query against a snapshot. Results are sorted and unique.
std::vector<EntityName> run_query(const Snapshot& snapshot, const Query& query);

/// One named ontology. Manipulations, lease changes and reasoner updates
/// are serialized on an internal mutex; queries read the published
/// snapshot and never take it.
class OntologyRef {
 public:
  OntologyRef(std::string name, RefFlags flags, bool mandatory_mount);

  const std::string& name() const { return name_; }

  void mount(const std::string& client);
  void unmount(const std::string& client);
  /// Clears any lease. Returns the previous holder.
  std::optional<std::string> force_unmount();
  std::optional<std::string> lease() const;

  /// Adds/removes axioms as one unit: everything is validated before
  /// anything is applied or buffered.
  RefStatus manipulate(const std::string& client, const std::vector<Change>& changes);
  /// Like manipulate, also merging prefix declarations for later export.
  RefStatus load(const std::string& client, const std::vector<Change>& changes,
                 const std::map<std::string, std::string>& prefixes);

  /// Flushes the buffer and brings the inference up to date.
  RefStatus reason(const std::string& client);
  /// Flushes the buffer; reasons only if continuous updates are on.
  RefStatus apply(const std::string& client);

  RefFlags flags() const;
  RefStatus set_flags(const std::string& client, RefFlags flags);
  /// Sets one flag by its wire name; unknown names are kMalformedRequest.
  RefStatus configure(const std::string& client, std::string_view flag, bool value);
  std::size_t pending() const;

  std::shared_ptr<const Snapshot> snapshot() const;
  std::vector<EntityName> query(const Query& q) const { return run_query(*snapshot(), q); }
  /// Status as seen by queries.
  RefStatus status() const;

  /// True while the lease is held by `client` (test and procedure helper).
  bool held_by(const std::string& client) const;

 private:
  void check_manipulable(const std::string& client) const;
  RefStatus flush_locked(bool reason);
  RefStatus set_flags_locked(const std::string& client, RefFlags flags);
  void publish_locked(bool recompute);
  RefStatus status_locked(bool applied) const;

  const std::string name_;
  const bool mandatory_mount_;

  mutable std::mutex write_mu_;
  AxiomStore store_;
  ChangeBuffer buffer_;
  std::optional<std::string> lease_;
  RefFlags flags_;
  std::map<std::string, std::string> prefixes_;

  mutable std::mutex publish_mu_;
  std::shared_ptr<const Snapshot> published_;
};

struct ReferenceMapOptions {
  RefFlags default_flags;
  bool mandatory_mount = false;
};

/// Registry of named references. Lookups of absent names are errors.
class ReferenceMap {
 public:
  explicit ReferenceMap(ReferenceMapOptions options = {}) : options_(options) {}

  std::shared_ptr<OntologyRef> create(const std::string& name);
  std::shared_ptr<OntologyRef> create(const std::string& name, RefFlags flags);
  /// Fails with kReferenceBusy if another client holds the lease.
  void drop(const std::string& client, const std::string& name);
  std::shared_ptr<OntologyRef> get(const std::string& name) const;
  std::vector<std::string> names() const;

  const ReferenceMapOptions& options() const { return options_; }

 private:
  ReferenceMapOptions options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<OntologyRef>, std::less<>> refs_;
};

}  // namespace armordb
