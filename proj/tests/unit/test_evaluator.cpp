#include "doctest.h"

#include <random>

#include "crucible/evaluator.hpp"
#include "crucible/parser.hpp"
#include "crucible/schema.hpp"
#include "crucible/structural.hpp"
#include "fixtures.hpp"

using namespace crucible;

namespace {

using Bindings = std::vector<std::pair<std::string, std::string>>;

FormulaPtr formula(const ModelSchema& s, const std::string& text, const Bindings& vars = {}) {
  std::vector<std::string> names;
  for (const auto& [n, a] : vars) names.push_back(n);
  return resolve_formula(s, parse_formula_text(text), names);
}

bool holds(const ModelSchema& s, const Instance& inst, const std::string& text, const Bindings& vars = {}) {
  FormulaPtr f = formula(s, text, vars);
  Env env(inst, s);
  for (const auto& [n, a] : vars) env.bind(n, TupleSet::singleton(*inst.find_atom(a)));
  return eval_formula(*f, env);
}

// Evaluates `expr` by comparing against each candidate atom set: returns the
// atoms x with `x in expr`.
std::set<std::string> atoms_of(const ModelSchema& s, const Instance& inst, const std::string& expr,
                               const Bindings& vars = {}) {
  std::vector<std::string> names;
  for (const auto& [n, a] : vars) names.push_back(n);
  FormulaPtr f = resolve_formula(s, parse_formula_text("some " + expr), names);
  Env env(inst, s);
  for (const auto& [n, a] : vars) env.bind(n, TupleSet::singleton(*inst.find_atom(a)));
  TupleSet value = eval_expr(*f->left, env);
  std::set<std::string> out;
  for (auto k : value.keys()) out.insert(inst.atom_name(static_cast<AtomIndex>(k)));
  return out;
}

Valuation two_node_valuation() {
  Valuation v;
  v.sigSets["List"] = {"L0"};
  v.sigSets["Node"] = {"N0", "N1"};
  v.relTuples["header"] = {{"L0", "N0"}};
  v.relTuples["link"] = {{"N0", "N1"}};
  return v;
}

const Diagnostic* find(const std::vector<Diagnostic>& ds, const std::string& rule, const std::string& subject) {
  for (const auto& d : ds)
    if (d.rule == rule && d.subject == subject) return &d;
  return nullptr;
}

bool all_hold(const std::vector<Diagnostic>& ds) {
  return std::all_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.holds; });
}

}  // namespace

TEST_CASE("tuple set join, product and closure on small relations") {
  TupleSet r(2);
  r.insert({0, 1});
  r.insert({1, 2});
  TupleSet a = TupleSet::singleton(0);
  CHECK(a.join(r) == TupleSet::from_keys(1, {1}));
  TupleSet c = r.closure();
  CHECK(c.size() == 3);
  CHECK(c.contains({0, 2}));
  CHECK(r.transpose().contains({2, 1}));
  TupleSet p = a.product(TupleSet::singleton(2));
  CHECK(p.arity() == 2);
  CHECK(p.contains({0, 2}));
  TupleSet t(3);
  t.insert({0, 1, 2});
  t.insert({0, 2, 2});
  CHECK(TupleSet::singleton(0).join(t).size() == 2);
  CHECK(t.join(TupleSet::singleton(2)).size() == 2);
}

TEST_CASE("reflexive and plain closure from a node") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  Instance inst = Instance::from_valuation(two_node_valuation(), s);
  CHECK(atoms_of(s, inst, "n.*link", {{"n", "N0"}}) == std::set<std::string>{"N0", "N1"});
  CHECK(atoms_of(s, inst, "n.^link", {{"n", "N0"}}) == std::set<std::string>{"N1"});
  CHECK(atoms_of(s, inst, "List.header.*link") == std::set<std::string>{"N0", "N1"});
}

TEST_CASE("joining an event with a state-first ternary relation is empty") {
  ModelSchema s = testing::load_fixture("lts_faulty");
  Valuation v;
  v.sigSets["State"] = {"S0", "S1"};
  v.sigSets["Event"] = {"E0"};
  v.relTuples["trans"] = {{"S1", "E0", "S0"}, {"S1", "E0", "S1"}};
  Instance inst = Instance::from_valuation(v, s);
  CHECK(atoms_of(s, inst, "e.trans", {{"e", "E0"}}).empty());
  CHECK(holds(s, inst, "no e.trans", {{"e", "E0"}}));
  CHECK(atoms_of(s, inst, "e.(s.trans)", {{"s", "S1"}, {"e", "E0"}}) == std::set<std::string>{"S0", "S1"});
}

TEST_CASE("acyclic: faulty body is false and corrected body is true on the two-node list") {
  ModelSchema faulty = testing::load_fixture("lists_faulty");
  ModelSchema fixed = testing::load_fixture("lists_fixed");
  Instance a = Instance::from_valuation(two_node_valuation(), faulty);
  Instance b = Instance::from_valuation(two_node_valuation(), fixed);
  CHECK_FALSE(eval_pred(faulty, "acyclic", {}, a));
  CHECK(eval_pred(fixed, "acyclic", {}, b));
}

TEST_CASE("faulty inv3 is trivially true on the nondeterministic valuation") {
  Valuation v;
  v.sigSets["State"] = {"State0", "State1"};
  v.sigSets["Event"] = {"Event0", "Event1", "Event2"};
  v.sigSets["Init"] = {"State1"};
  v.relTuples["trans"] = {{"State1", "Event0", "State0"}, {"State1", "Event0", "State1"}};
  ModelSchema faulty = testing::load_fixture("lts_faulty");
  ModelSchema fixed = testing::load_fixture("lts_fixed");
  CHECK(eval_pred(faulty, "inv3", {}, Instance::from_valuation(v, faulty)));
  CHECK_FALSE(eval_pred(fixed, "inv3", {}, Instance::from_valuation(v, fixed)));
}

TEST_CASE("multiplicity formulas and quantifier kinds") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  Instance inst = Instance::from_valuation(two_node_valuation(), s);
  CHECK(holds(s, inst, "one List"));
  CHECK(holds(s, inst, "some Node"));
  CHECK_FALSE(holds(s, inst, "lone Node"));
  CHECK(holds(s, inst, "no Node & List"));
  CHECK(holds(s, inst, "one n : Node | some n.link"));
  CHECK(holds(s, inst, "lone n : Node | no n.link"));
  CHECK_FALSE(holds(s, inst, "no n : Node | no n.link"));
  CHECK(holds(s, inst, "some disj a, b : Node | a -> b in link"));
  CHECK_FALSE(holds(s, inst, "some disj a, b : List | a = a"));
  CHECK(holds(s, inst, "all disj a, b : Node | a != b"));
  CHECK(holds(s, inst, "Node = N0 + N1", {{"N0", "N0"}, {"N1", "N1"}}));
  CHECK(holds(s, inst, "link = N0 -> N1", {{"N0", "N0"}, {"N1", "N1"}}));
  CHECK(holds(s, inst, "iden in *link"));
  CHECK(holds(s, inst, "univ = List + Node"));
  CHECK(holds(s, inst, "no none"));
  CHECK(holds(s, inst, "some Node => some link else no link"));
  CHECK(holds(s, inst, "no List <=> no header"));
}

TEST_CASE("structural checks on the two-node list hold") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  auto ds = check_structural(Instance::from_valuation(two_node_valuation(), s), s);
  CHECK(all_hold(ds));
  CHECK(find(ds, "sigLowerBound", "List"));
  CHECK(find(ds, "sigUpperBound", "List"));
  CHECK(find(ds, "fieldUpperBound", "header"));
}

TEST_CASE("two List atoms violate the sig upper bound") {
  ModelSchema s = testing::load_fixture("lists_faulty");
  Valuation v = two_node_valuation();
  v.sigSets["List"].insert("L1");
  auto ds = check_structural(Instance::from_valuation(v, s), s);
  REQUIRE(find(ds, "sigUpperBound", "List"));
  CHECK_FALSE(find(ds, "sigUpperBound", "List")->holds);
}

TEST_CASE("a work without ids violates the field lower bound") {
  ModelSchema s = testing::load_fixture("cv_faulty");
  Valuation v;
  v.sigSets["User"] = {"U0"};
  v.sigSets["Source"] = {"U0"};
  v.sigSets["Work"] = {"W0"};
  v.relTuples["source"] = {{"W0", "U0"}};
  auto ds = check_structural(Instance::from_valuation(v, s), s);
  REQUIRE(find(ds, "fieldLowerBound", "ids"));
  CHECK_FALSE(find(ds, "fieldLowerBound", "ids")->holds);
  CHECK(find(ds, "fieldUpperBound", "source")->holds);
}

TEST_CASE("hierarchy and typing diagnostics") {
  ModelSchema s = testing::load_fixture("cv_faulty");
  Valuation v;
  v.sigSets["User"] = {"A"};
  v.sigSets["Institution"] = {"A"};
  v.sigSets["Source"] = {"A", "B"};
  v.sigSets["Work"] = {"W"};
  v.relTuples["ids"] = {{"W", "A"}};
  auto ds = check_structural(Instance::from_valuation(v, s), s);
  CHECK_FALSE(find(ds, "disjoint", "Source")->holds);
  CHECK_FALSE(find(ds, "abstractCover", "Source")->holds);
  CHECK_FALSE(find(ds, "fieldTyping", "ids")->holds);

  ModelSchema lts = testing::load_fixture("lts_faulty");
  Valuation w;
  w.sigSets["State"] = {"S0"};
  w.sigSets["Init"] = {"S1"};
  auto dl = check_structural(Instance::from_valuation(w, lts), lts);
  CHECK_FALSE(find(dl, "subsetContainment", "Init")->holds);
}

TEST_CASE("arrow multiplicities are checked per owner and in both directions") {
  ModelSchema s = load_schema("sig A { r : B lone -> one C } sig B {} sig C {}");
  Valuation v;
  v.sigSets["A"] = {"a"};
  v.sigSets["B"] = {"b0", "b1"};
  v.sigSets["C"] = {"c0", "c1"};
  v.relTuples["r"] = {{"a", "b0", "c0"}, {"a", "b1", "c1"}};
  CHECK(all_hold(check_structural(Instance::from_valuation(v, s), s)));
  // b1 maps to no C: violates `one` on the right.
  v.relTuples["r"] = {{"a", "b0", "c0"}};
  CHECK_FALSE(find(check_structural(Instance::from_valuation(v, s), s), "arrowMultiplicity", "r")->holds);
  // c0 reached from two Bs: violates `lone` on the left.
  v.relTuples["r"] = {{"a", "b0", "c0"}, {"a", "b1", "c0"}};
  CHECK_FALSE(find(check_structural(Instance::from_valuation(v, s), s), "arrowMultiplicity", "r")->holds);
}

TEST_CASE("facts are evaluated") {
  ModelSchema s = load_schema("sig A {} fact nonEmpty { some A }");
  Valuation v;
  auto ds = check_facts(Instance::from_valuation(v, s), s);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].subject == "nonEmpty");
  CHECK_FALSE(ds[0].holds);
}

// ---------------------------------------------------------------------------
// Randomized properties over `sig N { r : set N }`.

namespace {

struct RandomGraph {
  int n;
  std::vector<std::vector<bool>> adj;
};

RandomGraph random_graph(std::mt19937& rng, bool acyclic) {
  RandomGraph g;
  g.n = std::uniform_int_distribution<int>(1, 6)(rng);
  g.adj.assign(g.n, std::vector<bool>(g.n, false));
  std::bernoulli_distribution edge(0.3);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (edge(rng) && (!acyclic || i < j)) g.adj[i][j] = true;
  return g;
}

Valuation to_valuation(const RandomGraph& g) {
  Valuation v;
  for (int i = 0; i < g.n; ++i) v.sigSets["N"].insert("n" + std::to_string(i));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (g.adj[i][j]) v.relTuples["r"].insert({"n" + std::to_string(i), "n" + std::to_string(j)});
  return v;
}

// Reachability in one or more steps by Warshall's algorithm.
std::vector<std::vector<bool>> reach(const RandomGraph& g) {
  auto m = g.adj;
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  return m;
}

const char* kGraphModel = "sig N { r : set N }";

}  // namespace

TEST_CASE("closure matches Warshall reachability and is a fixpoint") {
  ModelSchema s = load_schema(kGraphModel);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomGraph g = random_graph(rng, false);
    Instance inst = Instance::from_valuation(to_valuation(g), s);
    TupleSet r = inst.field("r");
    TupleSet c = r.closure();
    auto m = reach(g);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        auto a = *inst.find_atom("n" + std::to_string(i)), b = *inst.find_atom("n" + std::to_string(j));
        REQUIRE(c.contains({a, b}) == m[i][j]);
      }
    CHECK(c.unite(c.join(r)) == c);
    CHECK(r.subset_of(c));
  }
}

TEST_CASE("quantifier duality") {
  ModelSchema s = load_schema(kGraphModel);
  const std::vector<std::string> bodies = {"some x.r", "x in x.^r", "lone x.r", "one x.*r - x", "x.r in x"};
  std::mt19937 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomGraph g = random_graph(rng, false);
    Instance inst = Instance::from_valuation(to_valuation(g), s);
    const std::string& body = bodies[trial % bodies.size()];
    bool all = holds(s, inst, "all x : N | " + body);
    bool dual = holds(s, inst, "!(some x : N | !(" + body + "))");
    REQUIRE(all == dual);
    CHECK(holds(s, inst, "no x : N | " + body) == !holds(s, inst, "some x : N | " + body));
  }
}

TEST_CASE("reflexive and transitive closure diverge on acyclic chains") {
  ModelSchema s = load_schema(kGraphModel);
  std::mt19937 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomGraph g = random_graph(rng, true);
    Instance inst = Instance::from_valuation(to_valuation(g), s);
    REQUIRE(holds(s, inst, "all n : N | n in n.*r"));
    REQUIRE(holds(s, inst, "all n : N | n !in n.^r"));
  }
}

TEST_CASE("adding edges never shrinks n.^r") {
  ModelSchema s = load_schema(kGraphModel);
  std::mt19937 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomGraph g = random_graph(rng, false);
    Instance before = Instance::from_valuation(to_valuation(g), s);
    RandomGraph bigger = g;
    int i = std::uniform_int_distribution<int>(0, g.n - 1)(rng);
    int j = std::uniform_int_distribution<int>(0, g.n - 1)(rng);
    bigger.adj[i][j] = true;
    Instance after = Instance::from_valuation(to_valuation(bigger), s);
    for (int k = 0; k < g.n; ++k) {
      std::string atom = "n" + std::to_string(k);
      auto small = atoms_of(s, before, "x.^r", {{"x", atom}});
      auto large = atoms_of(s, after, "x.^r", {{"x", atom}});
      REQUIRE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
  }
}
