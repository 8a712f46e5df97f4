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


#include <doctest.h>

#include "armordb/axiom_store.hpp"
#include "armordb/error.hpp"
#include "support/random_ontology.hpp"

using namespace armordb;

namespace {

EntityName N(std::string_view s) { return EntityName::parse(s); }
ClassExpression C(std::string_view s) { return ClassExpression::named(N(s)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::map<EntityName, AxiomStore::TextSet> rebuild_index(const AxiomStore& s) {
  std::map<EntityName, AxiomStore::TextSet> out;
  for (const auto& a : s.axioms()) {
    for (const auto& n : a.signature()) out[n].insert(a.text());
  }
  return out;
}

}  // namespace

TEST_CASE("entity names") {
  CHECK(N("Sphere").str() == "ex:Sphere");
  CHECK(N("owl:Thing").is_reserved());
  CHECK(N("a2:b") < N("a:b"));  // byte order of the canonical text
  CHECK(code_of([] { N("9lives"); }) == ErrorCode::kMalformedRequest);
  CHECK(code_of([] { N("ex:"); }) == ErrorCode::kMalformedRequest);
  CHECK(code_of([] { N("has space"); }) == ErrorCode::kMalformedRequest);
  CHECK(EntityName::is_identifier("has-North_2"));
}

TEST_CASE("class expressions compare up to intersection order") {
  auto x = ClassExpression::intersection({C("B"), C("A"), C("A")});
  auto y = ClassExpression::intersection({C("A"), C("B"), C("A")});
  CHECK(x == y);
  CHECK(x != ClassExpression::intersection({C("A"), C("B")}));  // multiset, not set
  CHECK(ClassExpression::named(N("owl:Thing")).kind() == ClassExpression::Kind::kTop);
  CHECK(code_of([] { ClassExpression::intersection({C("A")}); }) == ErrorCode::kMalformedRequest);
  CHECK(ClassExpression::existential(N("r"), x).text() ==
        "ObjectSomeValuesFrom(ex:r ObjectIntersectionOf(ex:A ex:A ex:B))");
}

TEST_CASE("axiom signatures") {
  auto a = Axiom::object_property_assertion(N("hasNorth"), N("LivingRoom"), N("Corridor"));
  CHECK(a.signature() == std::set<EntityName>{N("hasNorth"), N("LivingRoom"), N("Corridor")});
  auto b = Axiom::sub_class_of(ClassExpression::top(), ClassExpression::bottom());
  CHECK(b.signature().empty());
}

TEST_SUITE("add_axiom") {
  TEST_CASE("declaration into an empty store") {
    AxiomStore s;
    CHECK(s.add(Axiom::declaration(EntityKind::kClass, N("Sphere"))));
    CHECK(s.size() == 1);
    CHECK(s.revision() == 1);
  }

  TEST_CASE("second add is a no-op") {
    AxiomStore s;
    auto a = Axiom::declaration(EntityKind::kClass, N("Sphere"));
    s.add(a);
    CHECK_FALSE(s.add(a));
    CHECK(s.revision() == 1);
  }

  TEST_CASE("property assertion indexes all three names") {
    AxiomStore s;
    auto a = Axiom::object_property_assertion(N("hasNorth"), N("LivingRoom"), N("Corridor"));
    s.add(a);
    for (auto n : {"hasNorth", "LivingRoom", "Corridor"}) {
      CHECK(s.axioms_mentioning(N(n)) == AxiomStore::TextSet{a.text()});
    }
  }

  TEST_CASE("reserved names") {
    AxiomStore s;
    CHECK(code_of([&] { s.add(Axiom::declaration(EntityKind::kClass, N("owl:Thing"))); }) ==
          ErrorCode::kReservedName);
    CHECK(code_of([&] { s.add(Axiom::class_assertion(C("A"), N("owl:Nothing"))); }) ==
          ErrorCode::kReservedName);
    CHECK(code_of([&] {
            s.add(Axiom::object_property_assertion(N("owl:Thing"), N("a"), N("b")));
          }) == ErrorCode::kReservedName);
    CHECK(code_of([&] {
            s.add(Axiom::sub_class_of(C("A"), ClassExpression::existential(N("owl:Nothing"), C("B"))));
          }) == ErrorCode::kReservedName);
    CHECK(s.size() == 0);
    CHECK(s.revision() == 0);
    // Using them as classes is fine.
    CHECK(s.add(Axiom::sub_class_of(C("A"), ClassExpression::top())));
  }
}

TEST_SUITE("remove_axiom") {
  TEST_CASE("absent axiom") {
    AxiomStore s;
    CHECK_FALSE(s.remove(Axiom::declaration(EntityKind::kClass, N("A"))));
    CHECK(s.revision() == 0);
  }

  TEST_CASE("add then remove restores the store") {
    AxiomStore s;
    s.add(Axiom::declaration(EntityKind::kClass, N("Dog")));
    AxiomStore before = s;
    auto a = Axiom::class_assertion(C("Dog"), N("rex"));
    s.add(a);
    s.remove(a);
    CHECK(s.same_axioms(before));
    CHECK(s.signature_index() == before.signature_index());
    CHECK(s.revision() == before.revision() + 2);
  }

  TEST_CASE("removal never cascades") {
    AxiomStore s;
    auto decl = Axiom::declaration(EntityKind::kClass, N("Dog"));
    auto assertion = Axiom::class_assertion(C("Dog"), N("rex"));
    s.add(decl);
    s.add(assertion);
    std::set<std::string> before;
    for (const auto& a : s.axioms()) before.insert(a.text());
    CHECK(s.remove(decl));
    std::set<std::string> after;
    for (const auto& a : s.axioms()) after.insert(a.text());
    before.erase(decl.text());
    CHECK(after == before);
    CHECK(s.contains(assertion));
    CHECK(s.mentions(N("Dog")));
  }
}

TEST_SUITE("replace_property_value") {
  TEST_CASE("old present") {
    AxiomStore s;
    s.add(Axiom::object_property_assertion(N("isIn"), N("robot"), N("LivingRoom")));
    auto rev = s.revision();
    CHECK(s.replace_property_value(N("isIn"), N("robot"), N("Corridor"), N("LivingRoom")));
    CHECK_FALSE(s.contains(Axiom::object_property_assertion(N("isIn"), N("robot"), N("LivingRoom"))));
    CHECK(s.contains(Axiom::object_property_assertion(N("isIn"), N("robot"), N("Corridor"))));
    CHECK(s.revision() == rev + 1);
  }

  TEST_CASE("new equals old") {
    AxiomStore s;
    s.add(Axiom::object_property_assertion(N("isIn"), N("robot"), N("Corridor")));
    auto rev = s.revision();
    CHECK_FALSE(s.replace_property_value(N("isIn"), N("robot"), N("Corridor"), N("Corridor")));
    CHECK(s.revision() == rev);
  }

  TEST_CASE("old absent matches a manual remove and add") {
    AxiomStore s, manual;
    for (auto* st : {&s, &manual}) st->add(Axiom::declaration(EntityKind::kIndividual, N("robot")));
    CHECK(s.replace_property_value(N("isIn"), N("robot"), N("Corridor"), N("Kitchen")));
    manual.remove(Axiom::object_property_assertion(N("isIn"), N("robot"), N("Kitchen")));
    manual.add(Axiom::object_property_assertion(N("isIn"), N("robot"), N("Corridor")));
    CHECK(s.same_axioms(manual));
    CHECK(s.revision() == 2);
  }
}

TEST_SUITE("buffering") {
  TEST_CASE("unbuffered changes apply immediately") {
    AxiomStore s;
    ChangeBuffer buf;
    CHECK(buffer_or_apply(s, buf, false, {ChangeOp::kAdd, Axiom::declaration(EntityKind::kClass, N("A"))}));
    CHECK(s.size() == 1);
    CHECK(buf.empty());
  }

  TEST_CASE("buffered changes wait") {
    AxiomStore s;
    ChangeBuffer buf;
    for (auto n : {"A", "B", "C"}) {
      CHECK_FALSE(buffer_or_apply(s, buf, true, {ChangeOp::kAdd, Axiom::declaration(EntityKind::kClass, N(n))}));
    }
    CHECK(s.size() == 0);
    CHECK(s.revision() == 0);
    CHECK(buf.size() == 3);
  }

  TEST_CASE("add then remove through the buffer restores the store") {
    AxiomStore s;
    s.add(Axiom::declaration(EntityKind::kClass, N("Base")));
    AxiomStore replay = s;
    ChangeBuffer buf;
    auto x = Axiom::declaration(EntityKind::kClass, N("X"));
    buffer_or_apply(s, buf, true, {ChangeOp::kAdd, x});
    buffer_or_apply(s, buf, true, {ChangeOp::kRemove, x});
    // Replay oracle: apply the buffer entries one by one to a copy.
    for (const auto& c : buf.pending()) c.op == ChangeOp::kAdd ? replay.add(c.axiom) : replay.remove(c.axiom);
    CHECK(flush(s, buf) == 2);
    CHECK(s.same_axioms(replay));
    CHECK(buf.empty());
  }

  TEST_CASE("flush counts") {
    AxiomStore s;
    ChangeBuffer buf;
    CHECK(flush(s, buf) == 0);
    CHECK(s.revision() == 0);

    auto a1 = Axiom::declaration(EntityKind::kClass, N("A1"));
    auto a2 = Axiom::declaration(EntityKind::kClass, N("A2"));
    buf.push({ChangeOp::kAdd, a1});
    buf.push({ChangeOp::kAdd, a2});
    CHECK(flush(s, buf) == 2);
    CHECK(s.contains(a1));
    CHECK(s.contains(a2));
    CHECK(s.revision() == 1);

    AxiomStore t;
    buf.push({ChangeOp::kAdd, a1});
    buf.push({ChangeOp::kAdd, a1});
    CHECK(flush(t, buf) == 2);
    CHECK(t.size() == 1);
  }

  TEST_CASE("flush stops at a failing entry") {
    AxiomStore s;
    ChangeBuffer buf;
    auto a = Axiom::declaration(EntityKind::kClass, N("A"));
    auto bad = Axiom::declaration(EntityKind::kClass, N("owl:Thing"));
    auto b = Axiom::declaration(EntityKind::kClass, N("B"));
    buf.push({ChangeOp::kAdd, a});
    buf.push({ChangeOp::kAdd, bad});
    buf.push({ChangeOp::kAdd, b});
    CHECK(code_of([&] { flush(s, buf); }) == ErrorCode::kReservedName);
    CHECK(s.contains(a));
    CHECK_FALSE(s.contains(b));
    CHECK(s.revision() == 1);
    REQUIRE(buf.size() == 2);
    CHECK(buf.pending()[0].axiom == bad);
  }
}

TEST_CASE("random mutation sequences keep the store invariants") {
  testing::OntologyGenerator gen(31337);
  for (int round = 0; round < 200; ++round) {
    AxiomStore immediate, buffered;
    ChangeBuffer buf;
    std::vector<Axiom> pool = gen.ontology();
    std::uint64_t last_revision = 0;
    for (int step = 0; step < 20; ++step) {
      Change c{gen.pick(3) ? ChangeOp::kAdd : ChangeOp::kRemove, pool[gen.pick(static_cast<int>(pool.size()))]};
      bool present = immediate.contains(c.axiom);
      auto rev = immediate.revision();
      buffer_or_apply(immediate, buf, false, c);
      buffer_or_apply(buffered, buf, true, c);
      bool effective = (c.op == ChangeOp::kAdd) != present;
      CHECK(immediate.revision() == rev + (effective ? 1 : 0));
      CHECK(immediate.revision() >= last_revision);
      last_revision = immediate.revision();
      CHECK(immediate.signature_index() == rebuild_index(immediate));
    }
    flush(buffered, buf);
    CHECK(buffered.same_axioms(immediate));
    CHECK(buffered.signature_index() == rebuild_index(buffered));
  }
}
