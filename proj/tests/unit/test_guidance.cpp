#include "doctest.h"

#include <random>

#include "crucible/guidance.hpp"
#include "crucible/run.hpp"
#include "crucible/structural.hpp"
#include "fixtures.hpp"

using namespace crucible;

namespace {

bool has_violation(const PreRunReport& r, const std::string& kind, const std::string& subject) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const PreRunViolation& v) { return v.kind == kind && v.subject == subject; });
}

}  // namespace

TEST_CASE("atom addition verdicts") {
  ModelSchema lists = testing::load_fixture("lists_faulty");
  TestCase t;
  CHECK(validate_atom_addition(t, lists, "Node").allowed());
  add_atom(t, lists, "List");
  GuidanceVerdict v = validate_atom_addition(t, lists, "List");
  CHECK(v.rule == "sigUpperBound");
  CHECK(v.message.find("one sig List") != std::string::npos);

  ModelSchema cv = testing::load_fixture("cv_faulty");
  CHECK(validate_atom_addition(TestCase{}, cv, "Source").rule == "abstract");
  ModelSchema lts = testing::load_fixture("lts_faulty");
  CHECK(validate_atom_addition(TestCase{}, lts, "Init").rule == "subsetSig");
  CHECK_THROWS_AS(validate_atom_addition(TestCase{}, lts, "Nope"), Error);
}

TEST_CASE("caps on an ancestor sig apply to its children") {
  ModelSchema s = load_schema("lone sig P {} sig A extends P {} sig B extends P {}");
  TestCase t;
  add_atom(t, s, "A");
  GuidanceVerdict v = validate_atom_addition(t, s, "B");
  CHECK(v.rule == "sigUpperBound");
  CHECK(v.culprit == "P");
}

TEST_CASE("connection verdicts") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  TestCase t;
  add_atom(t, s, "List");
  add_atom(t, s, "Node");
  add_atom(t, s, "Node");
  CHECK(validate_connection_addition(t, s, "header", {"List0", "Node0"}).allowed());
  CHECK(validate_connection_addition(t, s, "header", {"Node0", "List0"}).rule == "typing");
  add_connection(t, s, "header", {"List0", "Node0"});
  CHECK(validate_connection_addition(t, s, "header", {"List0", "Node1"}).rule == "relUpperBound");
  CHECK(validate_connection_addition(t, s, "header", {"List0", "Node0"}).rule == "duplicate");
  CHECK(validate_connection_addition(t, s, "link", {"Node0", "Node0"}).allowed());
  CHECK_THROWS_AS(validate_connection_addition(t, s, "nope", {"List0", "Node0"}), Error);
  try {
    validate_connection_addition(t, s, "header", {"List0"});
    FAIL("arity mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
}

TEST_CASE("duplicate higher-arity tuples are blocked") {
  ModelSchema s = testing::load_fixture("lts_faulty");
  TestCase t;
  add_atom(t, s, "State");
  add_atom(t, s, "State");
  add_atom(t, s, "Event");
  add_connection(t, s, "trans", {"State1", "Event0", "State0"});
  CHECK(validate_connection_addition(t, s, "trans", {"State1", "Event0", "State0"}).rule == "duplicate");
}

TEST_CASE("valid connection targets") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  TestCase t;
  add_atom(t, s, "List");
  add_atom(t, s, "Node");
  add_atom(t, s, "Node");
  CHECK(valid_connection_targets(t, s, "header", {"List0"}) == std::vector<std::string>{"Node0", "Node1"});
  CHECK(valid_connection_targets(t, s, "header", {}) == std::vector<std::string>{"List0"});
  add_connection(t, s, "header", {"List0", "Node0"});
  CHECK(valid_connection_targets(t, s, "header", {"List0"}).empty());
  CHECK_THROWS_AS(valid_connection_targets(t, s, "header", {"List0", "Node0"}), Error);
  CHECK_THROWS_AS(valid_connection_targets(t, s, "header", {"Node0"}), Error);
  CHECK_THROWS_AS(valid_connection_targets(t, s, "missing", {}), Error);
}

TEST_CASE("a reached lone cap really leaves no structurally valid target") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  TestCase t;
  add_atom(t, s, "List");
  add_atom(t, s, "Node");
  add_atom(t, s, "Node");
  add_connection(t, s, "header", {"List0", "Node0"});
  // Force each extra header tuple past guidance and confirm the checker rejects it.
  for (const char* node : {"Node0", "Node1"}) {
    if (std::string(node) == "Node0") continue;
    TestCase forced = t;
    forced.connections.push_back({"header", {"List0", node}});
    Instance inst = Instance::from_valuation(derive_valuation(forced, s), s);
    auto ds = check_structural(inst, s);
    CHECK(std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return !d.holds; }));
  }
}

TEST_CASE("higher-arity targets are filtered by type only") {
  ModelSchema s = load_schema("sig State { trans : Event lone -> lone State } sig Event {}");
  TestCase t;
  add_atom(t, s, "State");
  add_atom(t, s, "Event");
  add_atom(t, s, "State");
  CHECK(valid_connection_targets(t, s, "trans", {"State0"}) == std::vector<std::string>{"Event0"});
  add_connection(t, s, "trans", {"State0", "Event0", "State0"});
  CHECK(valid_connection_targets(t, s, "trans", {"State0", "Event0"}) ==
        std::vector<std::string>{"State0", "State1"});
}

TEST_CASE("targets equal the atoms whose completed tuple is allowed") {
  ModelSchema s = testing::load_fixture("cv_faulty");
  std::mt19937 rng(5);
  testing::RandomCanvasOptions opts;
  opts.defaultMaxAtoms = 3;
  for (int trial = 0; trial < 200; ++trial) {
    TestCase t = testing::random_canvas(s, rng, opts);
    for (const auto& f : s.fields)
      for (const auto& src : t.atoms) {
        if (!is_member(s, src, f.owner)) continue;
        auto targets = valid_connection_targets(t, s, f.name, {src.id});
        std::vector<std::string> expected;
        for (const auto& a : t.atoms)
          if (validate_connection_addition(t, s, f.name, {src.id, a.id}).allowed()) expected.push_back(a.id);
        REQUIRE(targets == expected);
      }
  }
}

TEST_CASE("pre-run check reports lower bounds") {
  ModelSchema lists = testing::load_fixture("lists_faulty");
  CHECK(has_violation(pre_run_check(TestCase{}, lists), "lowerBound", "List"));
  CHECK(pre_run_check(testing::lists_two_node(lists), lists).empty());

  ModelSchema cv = testing::load_fixture("cv_faulty");
  TestCase t;
  add_atom(t, cv, "User");
  add_atom(t, cv, "Work");
  add_connection(t, cv, "source", {"Work0", "User0"});
  PreRunReport r = pre_run_check(t, cv);
  CHECK(has_violation(r, "lowerBound", "ids"));
  CHECK(r.violations.size() == 1);
}

TEST_CASE("pre-run check reports higher-arity multiplicities") {
  ModelSchema s = load_schema("sig State { trans : Event -> lone State } sig Event {}");
  TestCase t;
  add_atom(t, s, "State");
  add_atom(t, s, "State");
  add_atom(t, s, "Event");
  add_connection(t, s, "trans", {"State1", "Event0", "State0"});
  CHECK(pre_run_check(t, s).empty());
  add_connection(t, s, "trans", {"State1", "Event0", "State1"});
  CHECK(has_violation(pre_run_check(t, s), "higherArityMult", "trans"));
}

TEST_CASE("guidance soundness on random canvases") {
  for (const char* model : {"lists_faulty", "lts_faulty", "cv_faulty"}) {
    ModelSchema s = testing::load_fixture(model);
    std::mt19937 rng(99);
    testing::RandomCanvasOptions opts;
    opts.defaultMaxAtoms = 3;
    opts.predicateProbability = 0;
    int clean = 0;
    for (int trial = 0; trial < 300; ++trial) {
      TestCase t = testing::random_canvas(s, rng, opts);
      if (!pre_run_check(t, s).empty()) continue;
      ++clean;
      INFO(model << " trial " << trial);
      REQUIRE(run_test(t, s).passed);
    }
    CHECK(clean > 20);
  }
}
