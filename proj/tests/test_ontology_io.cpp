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

#include <cctype>
#include <filesystem>

#include "armordb/ofn.hpp"
#include "support/random_ontology.hpp"

using namespace armordb;

namespace {

ofn::ParseError parse_error(std::string_view text) {
  try {
    ofn::parse(text);
  } catch (const ofn::ParseError& e) {
    return e;
  }
  FAIL("document parsed: ", text);
  throw;
}

constexpr std::string_view kMapScenario = R"(Prefix(ex:=<http://example.org/armordb#>)
Ontology(<http://example.org/armordb/map>
  Declaration(NamedIndividual(ex:LivingRoom))
  Declaration(NamedIndividual(ex:Corridor))
  Declaration(ObjectProperty(ex:hasNorth))
  ObjectPropertyAssertion(ex:hasNorth ex:LivingRoom ex:Corridor)
)
)";

}  // namespace

TEST_CASE("smallest document") {
  auto doc = ofn::parse("Ontology( SubClassOf(ex:Dog ex:Animal) )");
  REQUIRE(doc.axioms.size() == 1);
  CHECK(doc.axioms[0] == Axiom::sub_class_of(ClassExpression::named(EntityName("ex", "Dog")),
                                             ClassExpression::named(EntityName("ex", "Animal"))));
  CHECK_FALSE(doc.ontology_iri);
}

TEST_CASE("unsupported constructs are named") {
  auto e = parse_error("Ontology(\n  SubClassOf(ex:A ObjectUnionOf(ex:B ex:C))\n)");
  CHECK(e.code() == ErrorCode::kUnsupportedExpression);
  CHECK(std::string(e.what()).find("ObjectUnionOf") != std::string::npos);
  CHECK(e.line() == 2);
  CHECK(e.column() == 19);

  CHECK(parse_error("Ontology(SameIndividual(ex:a ex:b))").code() == ErrorCode::kUnsupportedExpression);
  CHECK(parse_error("Ontology(Declaration(DataProperty(ex:p)))").code() ==
        ErrorCode::kUnsupportedExpression);
  CHECK(parse_error("Ontology(SubClassOf(ex:A ObjectAllValuesFrom(ex:r ex:B)))").code() ==
        ErrorCode::kUnsupportedExpression);
}

TEST_CASE("map scenario document") {
  auto doc = ofn::parse(kMapScenario);
  CHECK(doc.axioms.size() == 4);
  CHECK(doc.ontology_iri == "http://example.org/armordb/map");
  CHECK(std::count(doc.axioms.begin(), doc.axioms.end(),
                   Axiom::object_property_assertion(EntityName("ex", "hasNorth"),
                                                    EntityName("ex", "LivingRoom"),
                                                    EntityName("ex", "Corridor"))) == 1);
}

TEST_CASE("empty ontology") {
  CHECK(ofn::serialize({}) ==
        "Prefix(ex:=<http://example.org/armordb#>)\n"
        "Prefix(owl:=<http://www.w3.org/2002/07/owl#>)\n"
        "Ontology(\n)\n");
}

TEST_CASE("syntax errors") {
  CHECK(parse_error("Ontology(SubClassOf(ex:A))").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Ontology(SubClassOf(zz:A ex:B))").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Ontology(SubClassOf(A ex:B))").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Ontology(Frobnicate(ex:A))").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Ontology(EquivalentClasses(ex:A))").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Ontology(").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Ontology() extra").code() == ErrorCode::kOntologyParseError);
  CHECK(parse_error("Prefix(:=<http://x#>) Ontology()").code() == ErrorCode::kOntologyParseError);
  auto e = parse_error("Ontology(\n\n   SubClassOf(ex:A @))");
  CHECK(e.line() == 3);
  CHECK(e.column() == 20);
}

TEST_CASE("full IRIs fold to declared prefixes") {
  auto doc = ofn::parse(
      "Prefix(k:=<http://kitchen.example/onto#>)\n"
      "Ontology(SubClassOf(<http://kitchen.example/onto#Cup> <http://example.org/armordb#Thing2>))");
  REQUIRE(doc.axioms.size() == 1);
  CHECK(doc.axioms[0].text() == "SubClassOf(k:Cup ex:Thing2)");
  CHECK(parse_error("Ontology(SubClassOf(<http://nowhere/A> ex:B))").code() ==
        ErrorCode::kOntologyParseError);
  // owl:Thing by full IRI is Top.
  auto top = ofn::parse("Ontology(SubClassOf(ex:A <http://www.w3.org/2002/07/owl#Thing>))");
  CHECK(top.axioms[0].classes()[1].kind() == ClassExpression::Kind::kTop);
}

TEST_CASE("class expression arguments") {
  CHECK(ofn::parse_class_expression("Sphere").text() == "ex:Sphere");
  CHECK(ofn::parse_class_expression("ObjectIntersectionOf(B ObjectSomeValuesFrom(r A))").text() ==
        "ObjectIntersectionOf(ObjectSomeValuesFrom(ex:r ex:A) ex:B)");
  CHECK_THROWS_AS(ofn::parse_class_expression("A B"), ofn::ParseError);
  CHECK_THROWS_AS(ofn::parse_class_expression("ObjectUnionOf(A B)"), ofn::ParseError);
}

TEST_CASE("round trip of generated documents") {
  testing::OntologyGenerator gen(4242, {.classes = 3, .roles = 2, .individuals = 3, .max_axioms = 12,
                                        .max_depth = 3});
  for (int round = 0; round < 200; ++round) {
    ofn::DocumentModel m;
    if (round % 3 == 0) m.ontology_iri = "http://example.org/o" + std::to_string(round);
    if (round % 5 == 0) m.prefixes["k"] = "http://kitchen.example/onto#";
    m.axioms = gen.ontology();
    auto text = ofn::serialize(m);
    auto back = ofn::parse(text);
    CHECK(back == m);
    CHECK(ofn::serialize(back) == text);
  }
}

TEST_CASE("store export parses back even with undeclared prefixes") {
  AxiomStore s;
  s.add(Axiom::sub_class_of(ClassExpression::named(EntityName("kit", "Cup")),
                            ClassExpression::named(EntityName("ex", "Thing2"))));
  auto doc = ofn::from_store(s);
  CHECK(ofn::parse(ofn::serialize(doc)) == doc);
}

TEST_CASE("error positions stay near the injection site") {
  // Token start offsets, using the same token boundaries as the grammar.
  auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_:.-").find(c) != std::string_view::npos; };
  auto token_starts = [&](const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (c == ' ' || c == '\n') {
        ++i;
      } else if (c == '<') {
        out.push_back(i);
        i = text.find('>', i) + 1;
      } else if (word_char(c)) {
        out.push_back(i);
        while (i < text.size() && word_char(text[i])) ++i;
      } else {
        out.push_back(i++);
      }
    }
    out.push_back(text.size());  // end of input
    return out;
  };
  auto offset_of = [](const std::string& text, std::size_t line, std::size_t column) {
    std::size_t off = 0;
    for (std::size_t l = 1; l < line; ++l) off = text.find('\n', off) + 1;
    return off + column - 1;
  };

  ofn::DocumentModel m;
  testing::OntologyGenerator gen(77);
  m.axioms = gen.ontology();
  m.axioms.push_back(Axiom::declaration(EntityKind::kIndividual, EntityName("ex", "a")));
  const std::string doc = ofn::serialize(m);
  const auto starts = token_starts(doc);

  int injected = 0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    // A stray ')' is left out: it can legally close a construct early, which
    // moves the first detectable mismatch arbitrarily far away.
    for (std::string junk : {"@", "(", "Bogus(", "="}) {
      const std::string bad = doc.substr(0, starts[k]) + junk + " " + doc.substr(starts[k]);
      const auto bad_starts = token_starts(bad);
      const long junk_tokens = junk == "Bogus(" ? 2 : 1;
      try {
        ofn::parse(bad);
        continue;  // the junk happened to be valid here
      } catch (const ofn::ParseError& e) {
        ++injected;
        std::size_t off = offset_of(bad, e.line(), e.column());
        auto it = std::find(bad_starts.begin(), bad_starts.end(), off);
        REQUIRE_MESSAGE(it != bad_starts.end(), std::string(e.what()), "\n", bad);
        long at = it - bad_starts.begin();
        long first = static_cast<long>(k), last = first + junk_tokens - 1;
        CHECK_MESSAGE((at >= first - 1 && at <= last + 1), "junk '", junk, "' before token ", k, " got ", at, ": ", bad,
                      std::string(e.what()));
      }
    }
  }
  CHECK(injected > 50);
}

TEST_CASE("file io") {
  auto path = std::filesystem::temp_directory_path() / "armordb_test_io.ofn";
  auto doc = ofn::parse(kMapScenario);
  ofn::write_file(path.string(), doc);
  CHECK(ofn::read_file(path.string()) == doc);
  std::filesystem::remove(path);
  try {
    ofn::read_file("/nonexistent/dir/x.ofn");
    FAIL("expected FileIOError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFileIOError);
  }
}
