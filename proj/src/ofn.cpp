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


#include "armordb/ofn.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace armordb::ofn {

namespace {

struct Token {
  enum class Kind { kOpen, kClose, kEquals, kIri, kWord, kEnd };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

constexpr std::array kUnsupportedExpressions{
    "ObjectUnionOf",         "ObjectComplementOf",     "ObjectOneOf",
    "ObjectAllValuesFrom",   "ObjectHasValue",         "ObjectHasSelf",
    "ObjectMinCardinality",  "ObjectMaxCardinality",   "ObjectExactCardinality",
    "ObjectInverseOf",       "DataSomeValuesFrom",     "DataAllValuesFrom",
    "DataHasValue",          "DataMinCardinality",     "DataMaxCardinality",
    "DataExactCardinality",  "ObjectPropertyChain",
};

constexpr std::array kUnsupportedAxioms{
    "Import",
    "Annotation",
    "AnnotationAssertion",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
    "DisjointUnion",
    "EquivalentObjectProperties",
    "DisjointObjectProperties",
    "InverseObjectProperties",
    "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "TransitiveObjectProperty",
    "SubDataPropertyOf",
    "EquivalentDataProperties",
    "DisjointDataProperties",
    "DataPropertyDomain",
    "DataPropertyRange",
    "FunctionalDataProperty",
    "DatatypeDefinition",
    "HasKey",
    "SameIndividual",
    "DifferentIndividuals",
    "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion",
    "NegativeDataPropertyAssertion",
};

template <std::size_t N>
bool listed(const std::array<const char*, N>& list, std::string_view word) {
  return std::any_of(list.begin(), list.end(), [&](const char* s) { return word == s; });
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t{Token::Kind::kEnd, {}, line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(' || c == ')' || c == '=') {
      t.kind = c == '(' ? Token::Kind::kOpen : c == ')' ? Token::Kind::kClose : Token::Kind::kEquals;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    if (c == '<') {
      advance();
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '>') {
        char d = text_[pos_];
        if (d == ' ' || d == '\t' || d == '\n' || d == '\r' || d == '<') {
          throw ParseError(ErrorCode::kOntologyParseError, t.line, t.column, "unterminated IRI");
        }
        advance();
      }
      if (pos_ >= text_.size()) {
        throw ParseError(ErrorCode::kOntologyParseError, t.line, t.column, "unterminated IRI");
      }
      t.kind = Token::Kind::kIri;
      t.text = std::string(text_.substr(start, pos_ - start));
      advance();
      return t;
    }
    if (word_char(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && word_char(text_[pos_])) advance();
      t.kind = Token::Kind::kWord;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    throw ParseError(ErrorCode::kOntologyParseError, t.line, t.column,
                     "unexpected character '" + printable(c) + "'");
  }

 private:
  static bool word_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-' || c == ':' || c == '.';
  }

  static std::string printable(char c) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string(1, c);
    std::ostringstream os;
    os << "\\x" << std::hex << static_cast<int>(u);
    return os.str();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, DocumentModel& model, bool bare_names)
      : lexer_(text), model_(model), bare_names_(bare_names) {
    current_ = lexer_.next();
  }

  void document() {
    while (is_word("Prefix")) prefix_declaration();
    if (!is_word("Ontology")) fail("expected 'Prefix' or 'Ontology'");
    take();
    expect(Token::Kind::kOpen, "'('");
    if (current_.kind == Token::Kind::kIri) model_.ontology_iri = take().text;
    while (current_.kind != Token::Kind::kClose) {
      if (current_.kind == Token::Kind::kEnd) fail("expected ')' closing Ontology");
      model_.axioms.push_back(axiom());
    }
    take();
    if (current_.kind != Token::Kind::kEnd) fail("unexpected content after the ontology");
  }

  ClassExpression lone_expression() {
    auto c = class_expression();
    if (current_.kind != Token::Kind::kEnd) fail("unexpected content after the class expression");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(current_, message); }

  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw ParseError(ErrorCode::kOntologyParseError, t.line, t.column, message);
  }

  [[noreturn]] static void unsupported(const Token& t) {
    throw ParseError(ErrorCode::kUnsupportedExpression, t.line, t.column,
                     "unsupported construct " + t.text);
  }

  bool is_word(std::string_view w) const {
    return current_.kind == Token::Kind::kWord && current_.text == w;
  }

  Token take() {
    Token t = std::move(current_);
    current_ = lexer_.next();
    return t;
  }

  Token expect(Token::Kind kind, std::string_view what) {
    if (current_.kind != kind) {
      fail("expected " + std::string(what) + describe_current());
    }
    return take();
  }

  std::string describe_current() const {
    if (current_.kind == Token::Kind::kEnd) return ", found end of input";
    return ", found '" + current_.text + "'";
  }

  void prefix_declaration() {
    take();
    expect(Token::Kind::kOpen, "'('");
    Token name = expect(Token::Kind::kWord, "prefix name");
    if (name.text.size() < 2 || name.text.back() != ':' ||
        !EntityName::is_identifier(std::string_view(name.text).substr(0, name.text.size() - 1))) {
      fail_at(name, "invalid prefix name '" + name.text + "'");
    }
    expect(Token::Kind::kEquals, "'='");
    Token iri = expect(Token::Kind::kIri, "IRI");
    expect(Token::Kind::kClose, "')'");
    model_.prefixes[name.text.substr(0, name.text.size() - 1)] = iri.text;
  }

  EntityName entity() {
    const Token t = current_;
    if (t.kind == Token::Kind::kIri) {
      take();
      return fold_iri(t);
    }
    if (t.kind != Token::Kind::kWord) fail("expected an entity name" + describe_current());
    if (listed(kUnsupportedExpressions, t.text)) unsupported(t);
    take();
    auto colon = t.text.find(':');
    if (colon == std::string::npos) {
      if (!bare_names_) fail_at(t, "expected a prefixed name, found '" + t.text + "'");
      if (!EntityName::is_identifier(t.text)) fail_at(t, "invalid name '" + t.text + "'");
      return EntityName("ex", t.text);
    }
    std::string prefix = t.text.substr(0, colon);
    std::string local = t.text.substr(colon + 1);
    if (!model_.prefixes.count(prefix)) fail_at(t, "undeclared prefix '" + prefix + ":'");
    if (!EntityName::is_identifier(prefix) || !EntityName::is_identifier(local)) {
      fail_at(t, "invalid name '" + t.text + "'");
    }
    return EntityName(prefix, local);
  }

  EntityName fold_iri(const Token& t) const {
    // Longest matching expansion wins.
    const std::string* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, iri] : model_.prefixes) {
      if (t.text.size() > iri.size() && t.text.compare(0, iri.size(), iri) == 0 &&
          iri.size() >= best_len && EntityName::is_identifier(std::string_view(t.text).substr(iri.size()))) {
        best = &prefix;
        best_len = iri.size();
      }
    }
    if (!best) fail_at(t, "IRI <" + t.text + "> does not fold to a declared prefix");
    return EntityName(*best, std::string_view(t.text).substr(best_len));
  }

  ClassExpression class_expression() {
    const Token t = current_;
    if (t.kind == Token::Kind::kWord && t.text.find(':') == std::string::npos) {
      if (t.text == "ObjectIntersectionOf") {
        take();
        expect(Token::Kind::kOpen, "'('");
        std::vector<ClassExpression> ops;
        while (current_.kind != Token::Kind::kClose) ops.push_back(class_expression());
        if (ops.size() < 2) fail("ObjectIntersectionOf needs at least two operands");
        take();
        return ClassExpression::intersection(std::move(ops));
      }
      if (t.text == "ObjectSomeValuesFrom") {
        take();
        expect(Token::Kind::kOpen, "'('");
        EntityName role = entity();
        ClassExpression filler = class_expression();
        expect(Token::Kind::kClose, "')'");
        return ClassExpression::existential(std::move(role), std::move(filler));
      }
      if (listed(kUnsupportedExpressions, t.text)) unsupported(t);
    }
    if (t.kind != Token::Kind::kWord && t.kind != Token::Kind::kIri) {
      fail("expected a class expression" + describe_current());
    }
    return ClassExpression::named(entity());
  }

  std::vector<ClassExpression> class_list(std::size_t min) {
    std::vector<ClassExpression> out;
    const Token start = current_;
    while (current_.kind != Token::Kind::kClose) {
      if (current_.kind == Token::Kind::kEnd) fail("expected ')'");
      out.push_back(class_expression());
    }
    if (out.size() < min) fail_at(start, "expected at least " + std::to_string(min) + " class expressions");
    return out;
  }

  Axiom axiom() {
    const Token head = current_;
    if (head.kind != Token::Kind::kWord) fail("expected an axiom" + describe_current());
    const std::string& kw = head.text;
    if (listed(kUnsupportedAxioms, kw) || listed(kUnsupportedExpressions, kw)) unsupported(head);
    take();
    expect(Token::Kind::kOpen, "'('");
    auto result = [&]() -> Axiom {
      if (kw == "SubClassOf") {
        auto sub = class_expression();
        auto sup = class_expression();
        return Axiom::sub_class_of(std::move(sub), std::move(sup));
      }
      if (kw == "EquivalentClasses") return Axiom::equivalent_classes(class_list(2));
      if (kw == "DisjointClasses") return Axiom::disjoint_classes(class_list(2));
      if (kw == "SubObjectPropertyOf") {
        auto sub = entity();
        auto sup = entity();
        return Axiom::sub_object_property_of(std::move(sub), std::move(sup));
      }
      if (kw == "ObjectPropertyDomain" || kw == "ObjectPropertyRange") {
        auto role = entity();
        auto c = class_expression();
        return kw == "ObjectPropertyDomain" ? Axiom::object_property_domain(std::move(role), std::move(c))
                                            : Axiom::object_property_range(std::move(role), std::move(c));
      }
      if (kw == "Declaration") return declaration();
      if (kw == "ClassAssertion") {
        auto c = class_expression();
        auto ind = entity();
        return Axiom::class_assertion(std::move(c), std::move(ind));
      }
      if (kw == "ObjectPropertyAssertion") {
        auto role = entity();
        auto s = entity();
        auto o = entity();
        return Axiom::object_property_assertion(std::move(role), std::move(s), std::move(o));
      }
      fail_at(head, "unknown axiom '" + kw + "'");
    }();
    expect(Token::Kind::kClose, "')'");
    return result;
  }

  Axiom declaration() {
    const Token kind = current_;
    if (kind.kind != Token::Kind::kWord) fail("expected an entity type" + describe_current());
    EntityKind ek;
    if (kind.text == "Class") {
      ek = EntityKind::kClass;
    } else if (kind.text == "ObjectProperty") {
      ek = EntityKind::kRole;
    } else if (kind.text == "NamedIndividual") {
      ek = EntityKind::kIndividual;
    } else if (kind.text == "DataProperty" || kind.text == "AnnotationProperty" ||
               kind.text == "Datatype") {
      unsupported(kind);
    } else {
      fail("unknown entity type '" + kind.text + "'");
    }
    take();
    expect(Token::Kind::kOpen, "'('");
    auto name = entity();
    expect(Token::Kind::kClose, "')'");
    return Axiom::declaration(ek, std::move(name));
  }

  Lexer lexer_;
  DocumentModel& model_;
  bool bare_names_;
  Token current_;
};

std::vector<std::string> sorted_texts(const std::vector<Axiom>& axioms) {
  std::vector<std::string> out;
  out.reserve(axioms.size());
  for (const auto& a : axioms) out.push_back(a.text());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool operator==(const DocumentModel& a, const DocumentModel& b) {
  return a.prefixes == b.prefixes && a.ontology_iri == b.ontology_iri &&
         sorted_texts(a.axioms) == sorted_texts(b.axioms);
}

DocumentModel parse(std::string_view text) {
  DocumentModel model;
  Parser(text, model, false).document();
  return model;
}

ClassExpression parse_class_expression(std::string_view text) {
  DocumentModel scratch;
  return Parser(text, scratch, true).lone_expression();
}

std::string serialize(const DocumentModel& model) {
  std::string out;
  for (const auto& [prefix, iri] : model.prefixes) {
    out += "Prefix(" + prefix + ":=<" + iri + ">)\n";
  }
  out += "Ontology(";
  if (model.ontology_iri) out += "<" + *model.ontology_iri + ">";
  out += "\n";
  for (const auto& t : sorted_texts(model.axioms)) out += t + "\n";
  out += ")\n";
  return out;
}

DocumentModel from_store(const AxiomStore& store) {
  DocumentModel model;
  model.axioms.assign(store.axioms().begin(), store.axioms().end());
  // Names may use prefixes nobody declared; give those a placeholder IRI
  // so the output parses back.
  for (const auto& [name, _] : store.signature_index()) {
    std::string prefix(name.prefix());
    if (!model.prefixes.count(prefix)) model.prefixes[prefix] = "urn:armordb:" + prefix + "#";
  }
  return model;
}

DocumentModel read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileIOError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kFileIOError, "cannot read " + path);
  return parse(buf.str());
}

void write_file(const std::string& path, const DocumentModel& model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFileIOError, "cannot open " + path + " for writing");
  out << serialize(model);
  out.flush();
  if (!out) throw Error(ErrorCode::kFileIOError, "cannot write " + path);
}

}  // namespace armordb::ofn
