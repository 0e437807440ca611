#include "doctest.h"

#include "crucible/run.hpp"
#include "fixtures.hpp"

using namespace crucible;

namespace {

const Diagnostic& predicate_diag(const RunResult& r) {
  for (const auto& d : r.diagnostics)
    if (d.kind == ConstraintKind::Predicate) return d;
  throw std::runtime_error("no predicate diagnostic");
}

}  // namespace

TEST_CASE("faulty list model fails the two-node test, corrected model passes") {
  ModelSchema faulty = testing::load_fixture("lists_faulty");
  RunResult r = run_test(testing::lists_two_node(faulty), faulty);
  CHECK_FALSE(r.passed);
  CHECK(predicate_diag(r).detail == "acyclic expected valid, evaluated false");
  CHECK(r.failures().size() == 1);
  ModelSchema fixed = testing::load_fixture("lists_fixed");
  CHECK(run_test(testing::lists_two_node(fixed), fixed).passed);
}

TEST_CASE("LTS verdicts") {
  ModelSchema faulty = testing::load_fixture("lts_faulty");
  ModelSchema fixed = testing::load_fixture("lts_fixed");
  RunResult r = run_test(testing::lts_nondeterministic(faulty), faulty);
  CHECK_FALSE(r.passed);
  CHECK(predicate_diag(r).subject == "!inv3");
  CHECK(predicate_diag(r).detail == "inv3 expected invalid, evaluated true");
  CHECK(run_test(testing::lts_nondeterministic(fixed), fixed).passed);
  CHECK_FALSE(run_test(testing::lts_maximal(faulty), faulty).passed);
  CHECK(run_test(testing::lts_maximal(fixed), fixed).passed);
}

TEST_CASE("CV verdicts") {
  ModelSchema faulty = testing::load_fixture("cv_faulty");
  ModelSchema fixed = testing::load_fixture("cv_fixed");
  CHECK_FALSE(run_test(testing::cv_first(faulty), faulty).passed);
  CHECK(run_test(testing::cv_first(fixed), fixed).passed);
  CHECK_FALSE(run_test(testing::cv_maximal(faulty), faulty).passed);
  CHECK(run_test(testing::cv_maximal(fixed), fixed).passed);
}

TEST_CASE("structural violations block the run unless allowed") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  TestCase t;
  add_atom(t, s, "Node");
  try {
    run_test(t, s);
    FAIL("run was not blocked");
  } catch (const StructuralBlock& e) {
    CHECK(e.code() == ErrorCode::StructuralBlock);
    REQUIRE(e.report().violations.size() == 1);
    CHECK(e.report().violations[0].subject == "List");
  }
  RunResult r = run_test(t, s, {.allowStructuralFailure = true});
  CHECK_FALSE(r.passed);
  REQUIRE(r.failures().size() == 1);
  CHECK(r.failures()[0].rule == "sigLowerBound");
}

TEST_CASE("flipping a predicate state flips exactly its diagnostic") {
  ModelSchema s = load_schema("sig N { r : set N } pred p { some r } pred q { no N }");
  TestCase t;
  add_atom(t, s, "N");
  add_connection(t, s, "r", {"N0", "N0"});
  set_predicate_state(t, s, "p", PredicateState::Valid);
  set_predicate_state(t, s, "q", PredicateState::Invalid);
  RunResult a = run_test(t, s);
  set_predicate_state(t, s, "p", PredicateState::Invalid);
  RunResult b = run_test(t, s);
  REQUIRE(a.diagnostics.size() == b.diagnostics.size());
  int flipped = 0;
  for (std::size_t i = 0; i < a.diagnostics.size(); ++i)
    if (a.diagnostics[i].holds != b.diagnostics[i].holds) {
      ++flipped;
      CHECK(a.diagnostics[i].subject == "p");
    }
  CHECK(flipped == 1);
  CHECK(a.passed);
  CHECK_FALSE(b.passed);
}

TEST_CASE("failing facts fail the run") {
  ModelSchema s = load_schema("sig A {} fact { some A }");
  RunResult r = run_test(TestCase{}, s);
  CHECK_FALSE(r.passed);
  CHECK(r.failures()[0].kind == ConstraintKind::Fact);
}

TEST_CASE("several enabled predicates combine by conjunction") {
  ModelSchema s = load_schema("sig N {} pred yes { some N } pred no1 { no N }");
  TestCase t;
  add_atom(t, s, "N");
  set_predicate_state(t, s, "yes", PredicateState::Valid);
  CHECK(run_test(t, s).passed);
  set_predicate_state(t, s, "no1", PredicateState::Valid);
  CHECK_FALSE(run_test(t, s).passed);
}
