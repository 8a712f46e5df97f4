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

#include <atomic>
#include <map>
#include <set>

#include "support/harness.hpp"

using namespace armordb;
using namespace armordb::testing;
using protocol::CommandResponse;

namespace {

const char* kScene = R"(
ADD OBJECTPROP INDIVIDUAL hasNorth scene1 box1
ADD OBJECTPROP INDIVIDUAL hasWest scene1 ball1
ADD INDIVIDUAL CLASS box1 Box
ADD INDIVIDUAL CLASS ball1 Sphere
ADD CLASS CLASS Sphere Shape
ADD CLASS CLASS Box Shape
ADD OBJECTPROP INDIVIDUAL hasNorth scene2 box2
ADD OBJECTPROP INDIVIDUAL hasWest scene2 ball2
ADD INDIVIDUAL CLASS box2 Box
ADD INDIVIDUAL CLASS ball2 Sphere
ADD OBJECTPROP INDIVIDUAL hasNorth scene3 ball3
ADD INDIVIDUAL CLASS ball3 Sphere
)";

void run_lines(Harness& h, const std::string& client, const std::string& lines) {
  std::istringstream in(lines);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CommandResponse r = h.run(client, line);
    REQUIRE_MESSAGE(r.success, line << ": " << r.error_description);
  }
}

}  // namespace

TEST_CASE("every registered error code is produced by exactly the expected path") {
  TempDir dir;
  std::string bad_syntax = dir.file("bad.ofn", "Ontology( SubClassOf(ex:A )\n");
  std::string missing = (dir.path() / "missing.ofn").string();
  auto procs = ProcedureRegistry::parse("proc broken()\n  ADD CLASS CLASS A\n");
  Harness h({}, procs);
  REQUIRE(h.run("a", "CREATE").success);
  REQUIRE(h.run("a", "CREATE", "inc").success);
  run_lines(h, "a", "");
  REQUIRE(h.run("a", "ADD DISJOINT CLASS A B", "inc").success);
  REQUIRE(h.run("a", "ADD INDIVIDUAL CLASS x A", "inc").success);
  REQUIRE(h.run("a", "ADD INDIVIDUAL CLASS x B", "inc").success);
  REQUIRE(h.run("holder", "MOUNT", "inc").success);

  auto line_code = [&](const std::string& line) {
    return protocol::decode_response(h.dispatcher.handle_line(line)).error_code;
  };
  std::map<ErrorCode, ErrorCode> observed;
  auto expect = [&](ErrorCode want, ErrorCode got) {
    CHECK(got == want);
    observed[want] = got;
  };
  expect(ErrorCode::kMalformedRequest, line_code("{not json"));
  expect(ErrorCode::kUnknownCommand,
         line_code(R"({"client_name":"a","reference_name":"map","command":"FROB","primary_spec":"",)"
                   R"("secondary_spec":"","args":[]})"));
  expect(ErrorCode::kBadArity, h.run("a", "ADD OBJECTPROP INDIVIDUAL hasNorth LivingRoom").error_code);
  expect(ErrorCode::kReservedName, h.run("a", "ADD INDIVIDUAL owl:Thing").error_code);
  expect(ErrorCode::kUnknownReference, h.run("a", "QUERY IND CLASS A", "nosuch").error_code);
  expect(ErrorCode::kReferenceBusy, h.run("other", "ADD CLASS C", "inc").error_code);
  expect(ErrorCode::kNotLeaseHolder, h.run("other", "UNMOUNT", "inc").error_code);
  expect(ErrorCode::kDuplicateReference, h.run("a", "CREATE").error_code);
  expect(ErrorCode::kUnknownEntity, h.run("a", "QUERY CLASS IND nobody").error_code);
  expect(ErrorCode::kInconsistentOntology, h.run("a", "QUERY CLASS IND x", "inc").error_code);
  expect(ErrorCode::kOntologyParseError, h.run("a", "LOAD FILE " + bad_syntax).error_code);
  expect(ErrorCode::kFileIOError, h.run("a", "LOAD FILE " + missing).error_code);
  expect(ErrorCode::kUnsupportedExpression, h.run("a", "ADD CLASS CLASS ObjectUnionOf(A B) C").error_code);
  expect(ErrorCode::kUnknownProcedure, h.run("a", "PROC nosuch").error_code);
  expect(ErrorCode::kProcedureFailed, h.run("a", "PROC broken").error_code);

  // Internal errors are reserved for non-library exceptions, which no
  // request path produces; every other registered code was observed.
  for (const ErrorInfo& info : error_registry()) {
    if (info.code == ErrorCode::kOk || info.code == ErrorCode::kInternalError) continue;
    CHECK_MESSAGE(observed.count(info.code), error_name(info.code));
  }
}

TEST_CASE("error responses keep the reference status") {
  Harness h;
  h.run("a", "CREATE");
  h.run("a", "ADD CLASS A");
  CommandResponse r = h.run("a", "QUERY CLASS IND nobody");
  CHECK_FALSE(r.success);
  CHECK(r.revision == 1);
  CHECK_FALSE(r.applied);
  CHECK(r.queried_names.empty());
  CHECK_FALSE(r.error_description.empty());
}

TEST_CASE("hasNorth map example through the dispatcher") {
  Harness h;
  CHECK(h.run("nodeA", "CREATE").consistent);
  CHECK(h.run("nodeA", "ADD CLASS Sphere").consistent);
  CHECK(h.run("nodeA", "ADD OBJECTPROP INDIVIDUAL hasNorth LivingRoom Corridor").consistent);
  CommandResponse q = h.run("nodeA", "QUERY OBJECTPROP IND hasNorth LivingRoom");
  CHECK(q.success);
  CHECK(q.queried_names == std::vector<std::string>{"ex:Corridor"});
  CommandResponse rep = h.run("nodeA", "REPLACE OBJECTPROP INDIVIDUAL hasNorth LivingRoom Kitchen Corridor");
  CHECK(rep.revision == 3);
  CHECK(h.run("nodeA", "QUERY OBJECTPROP IND hasNorth LivingRoom").queried_names ==
        std::vector<std::string>{"ex:Kitchen"});
  // Replacing a value with itself is not an effective change.
  CHECK(h.run("nodeA", "REPLACE OBJECTPROP INDIVIDUAL hasNorth LivingRoom Kitchen Kitchen").revision == 3);
}

TEST_CASE("query forms") {
  Harness h;
  h.run("a", "CREATE");
  run_lines(h, "a",
            "ADD CLASS CLASS Dog Animal\nADD CLASS CLASS Puppy Dog\nADD EQUIV CLASS Hound Dog\n"
            "ADD INDIVIDUAL CLASS rex Puppy\nADD DOMAIN OBJECTPROP owns Person\n"
            "ADD OBJECTPROP INDIVIDUAL owns alice rex\n");
  using V = std::vector<std::string>;
  CHECK(h.run("a", "QUERY CLASS IND rex").queried_names == V{"ex:Animal", "ex:Dog", "ex:Hound", "ex:Puppy"});
  CHECK(h.run("a", "QUERY CLASS IND rex direct").queried_names == V{"ex:Puppy"});
  CHECK(h.run("a", "QUERY CLASS IND rex sideways").error_code == ErrorCode::kMalformedRequest);
  CHECK(h.run("a", "QUERY IND CLASS Person").queried_names == V{"ex:alice"});
  CHECK(h.run("a", "QUERY IND CLASS ObjectSomeValuesFrom(owns Dog)").queried_names == V{"ex:alice"});
  CHECK(h.run("a", "QUERY CLASS CLASS Dog sup").queried_names == V{"ex:Animal"});
  CHECK(h.run("a", "QUERY CLASS CLASS Dog sub").queried_names == V{"ex:Puppy"});
  CHECK(h.run("a", "QUERY CLASS CLASS Dog equiv").queried_names == V{"ex:Hound"});
  CHECK(h.run("a", "QUERY CLASS CLASS Dog above").error_code == ErrorCode::kMalformedRequest);
  CHECK(h.run("a", "ADD CLASS 9lives").error_code == ErrorCode::kMalformedRequest);
  // Non-query responses never carry names.
  CHECK(h.run("a", "ADD CLASS Cat").queried_names.empty());
}

TEST_CASE("removal, disjointness and flags through commands") {
  Harness h;
  h.run("a", "CREATE");
  run_lines(h, "a", "ADD DISJOINT CLASS A B C\nADD INDIVIDUAL CLASS x A\n");
  CHECK_FALSE(h.run("a", "ADD INDIVIDUAL CLASS x C").consistent);
  CHECK(h.run("a", "REMOVE INDIVIDUAL CLASS x C").consistent);
  CHECK(h.run("a", "CONFIG FLAG buffered_manipulation maybe").error_code == ErrorCode::kMalformedRequest);
  CHECK(h.run("a", "CONFIG FLAG sparkle true").error_code == ErrorCode::kMalformedRequest);
  CHECK(h.run("a", "CONFIG FLAG buffered_manipulation true").success);
  CommandResponse buffered = h.run("a", "ADD INDIVIDUAL CLASS x B");
  CHECK_FALSE(buffered.applied);
  CHECK(buffered.consistent);
  CommandResponse flushed = h.run("a", "APPLY");
  CHECK(flushed.applied);
  CHECK_FALSE(flushed.consistent);
}

TEST_CASE("save and load round-trip keeps prefixes") {
  TempDir dir;
  std::string src = dir.file("in.ofn",
                             "Prefix(home:=<http://example.org/home#>)\nOntology(\n"
                             "SubClassOf(home:Kitchen home:Room)\nClassAssertion(home:Kitchen home:k1)\n)\n");
  std::string out = dir.file("out.ofn");
  Harness h;
  h.run("a", "CREATE");
  CHECK(h.run("a", "LOAD FILE " + src).revision == 1);
  CHECK(h.run("a", "QUERY CLASS IND home:k1").queried_names == std::vector<std::string>{"home:Kitchen", "home:Room"});
  CHECK(h.run("a", "SAVE FILE " + out).success);
  h.run("a", "CREATE", "copy");
  h.run("a", "LOAD FILE " + out, "copy");
  std::string a = h.run("a", "DUMP").error_description;
  std::string b = h.run("a", "DUMP", "copy").error_description;
  CHECK(a == b);
  CHECK(a.find("Prefix(home:=<http://example.org/home#>)") != std::string::npos);
}

TEST_CASE("procedure files") {
  CHECK(ProcedureRegistry::parse("").size() == 0);
  CHECK(ProcedureRegistry::parse("# only comments\n\n").size() == 0);

  auto error_of = [](const std::string& text) {
    try {
      ProcedureRegistry::parse(text);
    } catch (const ProcedureFileError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("proc abstract-class(a, b)\n  REASON\n").find("built-in") != std::string::npos);
  std::string undeclared = error_of("proc p(a)\n  ADD CLASS $a\n  ADD CLASS $x\n");
  CHECK(undeclared.find("$x") != std::string::npos);
  CHECK(undeclared.starts_with("line 3:"));
  CHECK(error_of("proc p()\n  REASON\nproc p()\n  APPLY\n").starts_with("line 3:"));
  CHECK(error_of("  REASON\n").starts_with("line 1:"));
  CHECK(error_of("proc p(a, a)\n").find("duplicate") != std::string::npos);
  CHECK(error_of("proc p()\n  FROB\n").starts_with("line 2:"));
  CHECK(error_of("proc p()\n  ADD DOMAIN x y\n").find("not a command row") != std::string::npos);
  CHECK(error_of("procedure p()\n").starts_with("line 1:"));

  auto reg = ProcedureRegistry::parse("proc place(obj, room)\n  ADD INDIVIDUAL CLASS $obj Object\n"
                                      "\tADD OBJECTPROP INDIVIDUAL isIn $obj $room\nproc noop()\n");
  REQUIRE(reg.find("place"));
  CHECK(reg.find("place")->params == std::vector<std::string>{"obj", "room"});
  CHECK(reg.find("place")->body.size() == 2);
  CHECK(reg.find("noop")->body.empty());
  CHECK(substitute("ADD CLASS $a$b $ab $", {"a", "b", "ab"}, {"X", "Y", "Z"}) == "ADD CLASS XY Z $");
}

TEST_CASE("running procedures") {
  auto reg = ProcedureRegistry::parse(
      "proc place(obj, room)\n  ADD INDIVIDUAL CLASS $obj Object\n  ADD OBJECTPROP INDIVIDUAL isIn $obj $room\n"
      "  QUERY CLASS IND $obj\n"
      "proc noop()\n"
      "proc twostep(a, b)\n  ADD INDIVIDUAL CLASS $a Thingy\n  ADD CLASS CLASS $b\n  ADD CLASS Never\n"
      "proc nested(a)\n  PROC place $a hall\n"
      "proc loop()\n  PROC loop\n");
  Harness h({}, reg);
  h.run("a", "CREATE");

  CommandResponse placed = h.run("a", "PROC place cup kitchen");
  CHECK(placed.success);
  CHECK(placed.queried_names == std::vector<std::string>{"ex:Object"});
  CHECK_FALSE(h.refs.get("map")->lease());  // the temporary mount is released

  CommandResponse noop = h.run("a", "PROC noop");
  CHECK(noop.success);
  CHECK(noop.revision == placed.revision);

  CHECK(h.run("a", "PROC place cup").error_code == ErrorCode::kBadArity);
  CHECK(h.run("a", "PROC nested mug").success);
  CommandResponse loop = h.run("a", "PROC loop");
  CHECK(loop.error_code == ErrorCode::kProcedureFailed);

  // Step 2 hits BadArity; step 1 stays applied, matching a single-step replay.
  auto before = h.refs.get("map")->snapshot()->store->axioms();
  CommandResponse failed = h.run("a", "PROC twostep bowl Dish");
  CHECK(failed.error_code == ErrorCode::kProcedureFailed);
  CHECK(failed.error_description.find("step 2") != std::string::npos);
  CHECK(failed.error_description.find("102") != std::string::npos);

  Harness replay({}, reg);
  replay.run("a", "CREATE");
  for (const Axiom& a : before) {
    replay.refs.get("map")->manipulate("a", {Change{ChangeOp::kAdd, a}});
  }
  replay.run("a", "ADD INDIVIDUAL CLASS bowl Thingy");
  CHECK(h.refs.get("map")->snapshot()->store->same_axioms(*replay.refs.get("map")->snapshot()->store));

  // A value with spaces becomes two arguments after substitution.
  CHECK(h.run("a", "PROC place \"cup saucer\" kitchen").error_code == ErrorCode::kProcedureFailed);

  // Busy references refuse the temporary mount.
  h.run("other", "MOUNT");
  CHECK(h.run("a", "PROC noop").error_code == ErrorCode::kReferenceBusy);
  // A holder keeps its own mount after the procedure.
  CHECK(h.run("other", "PROC noop").success);
  CHECK(h.refs.get("map")->lease() == std::optional<std::string>("other"));
}

TEST_CASE("abstract-class builds a scene class from an example individual") {
  Harness h;
  h.run("a", "CREATE");
  run_lines(h, "a", kScene);
  CommandResponse r = h.run("a", "PROC abstract-class scene1 SceneA");
  REQUIRE_MESSAGE(r.success, r.error_description);
  CHECK(r.queried_names == std::vector<std::string>{"ex:SceneA"});
  CHECK(h.run("a", "QUERY IND CLASS SceneA").queried_names == std::vector<std::string>{"ex:scene1", "ex:scene2"});
  std::string dump = h.run("a", "DUMP").error_description;
  CHECK(dump.find("EquivalentClasses(ObjectIntersectionOf(ObjectSomeValuesFrom(ex:hasNorth ex:Box) "
                  "ObjectSomeValuesFrom(ex:hasWest ex:Sphere)) ex:SceneA)") != std::string::npos);

  CHECK(h.run("a", "PROC abstract-class box1 Empty").error_code == ErrorCode::kProcedureFailed);
  CHECK(h.run("a", "PROC abstract-class ghost Empty").error_code == ErrorCode::kProcedureFailed);
  CHECK(h.run("a", "PROC abstract-class scene1").error_code == ErrorCode::kBadArity);
}

TEST_CASE("mandatory mount: manipulations without the lease return 201") {
  Harness h({RefFlags{}, true});
  h.run("a", "CREATE");
  for (const char* cmd : {"ADD CLASS A", "REMOVE CLASS A", "ADD INDIVIDUAL CLASS x A",
                          "REPLACE OBJECTPROP INDIVIDUAL r x y z", "CONFIG FLAG buffered_manipulation true"}) {
    CHECK_MESSAGE(h.run("a", cmd).error_code == ErrorCode::kReferenceBusy, std::string(cmd));
  }
  CHECK(h.run("a", "QUERY IND CLASS A").success);
  // Procedures take their own temporary mount.
  CHECK(h.run("a", "PROC abstract-class x Y").error_code == ErrorCode::kProcedureFailed);
  h.run("a", "MOUNT");
  CHECK(h.run("a", "ADD CLASS A").success);
}

TEST_CASE("config parsing and environment overrides") {
  ServerConfig c = parse_config(
      "# comment\nlisten_address = 0.0.0.0\nport = 9000\nbuffered_manipulation = true\n"
      "continuous_reasoner_update=false\nmandatory_mount = true # trailing\npreload = map=/tmp/a.ofn\n"
      "preload = kb=/tmp/b.ofn\nreasoner = builtin-el\n");
  CHECK(c.listen_address == "0.0.0.0");
  CHECK(c.port == 9000);
  CHECK(c.default_flags == RefFlags{true, false});
  CHECK(c.mandatory_mount);
  REQUIRE(c.preload.size() == 2);
  CHECK(c.preload[1].reference == "kb");
  CHECK(c.preload[1].path == "/tmp/b.ofn");

  std::map<std::string, std::string> env{{"ARMORDB_PORT", "0"},
                                         {"ARMORDB_MANDATORY_MOUNT", "false"},
                                         {"ARMORDB_PRELOAD", "x=/p/x.ofn,y=/p/y.ofn"}};
  apply_environment(c, [&](const char* k) -> const char* {
    auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  CHECK(c.port == 0);
  CHECK_FALSE(c.mandatory_mount);
  REQUIRE(c.preload.size() == 2);
  CHECK(c.preload[0].reference == "x");

  CHECK_THROWS_AS(parse_config("port = 70000\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mandatory_mount = yes\n"), ConfigError);
  ServerConfig bad;
  bad.reasoner = "hermit";
  CHECK_THROWS_AS(Server{bad}, ConfigError);
  ServerConfig missing_procs;
  missing_procs.procedures_path = "/nonexistent/procs.armorproc";
  CHECK_THROWS_AS(Server{missing_procs}, ConfigError);
}

TEST_CASE("preloaded references") {
  TempDir dir;
  ServerConfig c;
  c.preload.push_back({"kb", dir.file("kb.ofn", "Ontology(\nSubClassOf(ex:Dog ex:Animal)\n)\n")});
  c.log_level = "warn";
  Server s(c);
  CHECK(s.references().get("kb")->snapshot()->store->size() == 1);
  c.preload.push_back({"bad", dir.file("bad.ofn", "Ontology(")});
  CHECK_THROWS_AS(Server{c}, ConfigError);
}

TEST_CASE("network: FIFO per connection, malformed lines contained") {
  RunningServer srv;
  Client c = srv.connect();
  CHECK(c.call(request("a", "map", "CREATE")).success);
  CHECK(c.call(request("a", "map", "ADD CLASS CLASS Dog Animal")).success);
  for (int i = 0; i < 50; ++i) {
    c.call(request("a", "map", "ADD INDIVIDUAL CLASS i" + std::to_string(i) + " Dog"));
  }
  CommandResponse bad = protocol::decode_response(c.call_line("this is not json"));
  CHECK(bad.error_code == ErrorCode::kMalformedRequest);
  CHECK(protocol::decode_response(c.call_line("")).error_code == ErrorCode::kMalformedRequest);
  CHECK(protocol::decode_response(c.call_line("\x01\xff{")).error_code == ErrorCode::kMalformedRequest);
  CHECK(c.call(request("a", "map", "QUERY CLASS IND i7")).success);

}

TEST_CASE("network: pipelined requests are answered in order") {
  RunningServer srv;
  Client c = srv.connect();
  c.call(request("a", "map", "CREATE"));
  for (int i = 0; i < 60; ++i) {
    c.call(request("a", "map", "ADD INDIVIDUAL CLASS t" + std::to_string(i) + " C" + std::to_string(i)));
  }
  // Each request is tagged by its individual; every third one is broken so
  // failures and successes interleave.
  for (int i = 0; i < 60; ++i) {
    std::string tag = std::to_string(i);
    c.send_line(i % 3 == 2 ? "garbage " + tag : protocol::encode(request("a", "map", "QUERY CLASS IND t" + tag)));
  }
  for (int i = 0; i < 60; ++i) {
    CommandResponse r = protocol::decode_response(c.read_line());
    if (i % 3 == 2) {
      CHECK(r.error_code == ErrorCode::kMalformedRequest);
    } else {
      CHECK(r.queried_names == std::vector<std::string>{"ex:C" + std::to_string(i)});
    }
  }
}

TEST_CASE("network: concurrent connections are independent") {
  RunningServer srv;
  Client setup = srv.connect();
  setup.call(request("a", "map", "CREATE"));
  for (int i = 0; i < 40; ++i) {
    setup.call(request("a", "map", "ADD INDIVIDUAL CLASS t" + std::to_string(i) + " C" + std::to_string(i)));
  }
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      Client c = srv.connect();
      for (int round = 0; round < 25; ++round) {
        int i = (round * 7 + t) % 40;
        CommandResponse r = c.call(request("q" + std::to_string(t), "map", "QUERY CLASS IND t" + std::to_string(i)));
        if (r.queried_names != std::vector<std::string>{"ex:C" + std::to_string(i)}) ++mismatches;
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(mismatches == 0);
}

TEST_CASE("network: shutdown completes in-flight work and closes the listener") {
  // A long subclass chain makes LOAD slow enough to still be running when
  // stop() arrives.
  TempDir dir;
  std::string chain = "Ontology(\n";
  for (int i = 0; i < 400; ++i) {
    chain += "SubClassOf(ex:C" + std::to_string(i) + " ex:C" + std::to_string(i + 1) + ")\n";
  }
  std::string path = dir.file("chain.ofn", chain + ")\n");

  auto srv = std::make_unique<RunningServer>();
  Address addr = srv->address();
  Client c = srv->connect();
  CHECK(c.call(request("a", "map", "CREATE")).success);
  c.send_line(protocol::encode(request("a", "map", "LOAD FILE " + path)));
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  srv->server().stop();
  CommandResponse r = protocol::decode_response(c.read_line());
  CHECK(r.success);
  CHECK(r.revision == 1);
  srv->shutdown();
  CHECK_THROWS_AS(c.call(request("a", "map", "ADD CLASS B")), ConnectionError);
  CHECK_THROWS_AS(Client::connect(addr), ConnectionError);
}
