#include "doctest.h"

#include <random>

#include "crucible/evaluator.hpp"
#include "crucible/guidance.hpp"
#include "crucible/oracle.hpp"
#include "crucible/parser.hpp"
#include "crucible/run.hpp"
#include "crucible/structural.hpp"
#include "crucible/translator.hpp"
#include "fixtures.hpp"

using namespace crucible;

namespace {

OracleResult check(const ModelSchema& s, const std::string& text, const Scope& scope = {}) {
  return enumerate_satisfiable(s, *parse_formula_block(text, s), scope);
}

void check_witness(const ModelSchema& s, const std::string& text, const OracleResult& r) {
  REQUIRE(r.witness);
  Instance inst = Instance::from_valuation(*r.witness, s);
  for (const auto& d : check_structural(inst, s)) CHECK(d.holds);
  Env env(inst, s);
  CHECK(eval_formula(*parse_formula_block(text, s), env));
}

}  // namespace

TEST_CASE("two-node list string is unsat under the faulty model and sat under the fixed one") {
  ModelSchema faulty = testing::load_fixture("lists_faulty");
  std::string text = generate_command_string(testing::lists_two_node(faulty), faulty).text;
  OracleResult r = check(faulty, text);
  CHECK_FALSE(r.satisfiable);
  CHECK_FALSE(r.witness);
  CHECK(r.valuationsChecked > 0);

  ModelSchema fixed = testing::load_fixture("lists_fixed");
  OracleResult ok = check(fixed, text);
  REQUIRE(ok.satisfiable);
  check_witness(fixed, text, ok);
  // The witness is the canvas up to renaming.
  CHECK(ok.witness->sigSets.at("List").size() == 1);
  CHECK(ok.witness->sigSets.at("Node").size() == 2);
  CHECK(ok.witness->relTuples.at("header").size() == 1);
  CHECK(ok.witness->relTuples.at("link").size() == 1);
}

TEST_CASE("no List contradicts one sig List") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  CHECK_FALSE(check(s, "no List").satisfiable);
  CHECK_FALSE(check(s, generate_command_string(TestCase{}, s).text).satisfiable);
  PreRunReport r = pre_run_check(TestCase{}, s);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == "lowerBound");
  CHECK(r.violations[0].subject == "List");
}

TEST_CASE("abstract sigs hold no direct atoms") {
  ModelSchema s = testing::load_fixture("cv_faulty");
  Scope scope{.defaultCount = 1};
  CHECK_FALSE(check(s, "some Source - (Institution + User)", scope).satisfiable);
  CHECK(check(s, "some Source", scope).satisfiable);
}

TEST_CASE("facts restrict the search") {
  ModelSchema s = load_schema("sig A { r : set A } fact { no r }");
  CHECK_FALSE(check(s, "some r").satisfiable);
  CHECK(check(s, "some A").satisfiable);
}

TEST_CASE("witnesses are reproducible and minimal in atom count") {
  ModelSchema s = load_schema("sig A { r : set A }");
  OracleResult a = check(s, "some a : A | a in a.r");
  OracleResult b = check(s, "some a : A | a in a.r");
  REQUIRE(a.witness);
  CHECK(*a.witness == *b.witness);
  CHECK(a.witness->sigSets.at("A").size() == 1);
  check_witness(s, "some a : A | a in a.r", a);
}

TEST_CASE("scope bounds") {
  ModelSchema s = load_schema("sig A {} sig B {}");
  CHECK(check(s, "some disj a, b, c : A | no none").satisfiable);
  CHECK_FALSE(check(s, "some disj a, b, c, d : A | no none").satisfiable);
  Scope tight{.defaultCount = 0};
  CHECK_FALSE(check(s, "some A", tight).satisfiable);
  Scope big{.defaultCount = 7};
  try {
    check(s, "some A", big);
    FAIL("oversized universe accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UniverseTooLarge);
  }
  ModelSchema wide = load_schema("sig A { r : A -> A }");
  // Guards apply lazily, so an early witness can finish before the space grows.
  CHECK(check(wide, "some r", Scope{.defaultCount = 4}).satisfiable);
  CHECK_THROWS_AS(check(wide, "some r and no r", Scope{.defaultCount = 4}), Error);
}

TEST_CASE("run verdicts agree with the oracle on random canvases") {
  std::mt19937 rng(7);
  int cases = 0;
  for (const char* model : {"lists_faulty", "lists_fixed", "lts_faulty", "lts_fixed"}) {
    ModelSchema s = testing::load_fixture(model);
    testing::RandomCanvasOptions opts;
    opts.defaultMaxAtoms = 2;
    opts.predicateProbability = 0.8;
    for (int trial = 0; trial < 15; ++trial) {
      TestCase t = testing::random_canvas(s, rng, opts);
      if (!pre_run_check(t, s).empty()) continue;
      std::string text = generate_command_string(t, s).text;
      INFO(model << "\n" << text);
      REQUIRE(run_test(t, s).passed == check(s, text, Scope{.defaultCount = 2}).satisfiable);
      ++cases;
    }
  }
  CHECK(cases > 20);
}
