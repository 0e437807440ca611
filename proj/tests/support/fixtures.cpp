#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "crucible/guidance.hpp"

#ifndef CRUCIBLE_FIXTURE_DIR
#error "CRUCIBLE_FIXTURE_DIR must be defined"
#endif

namespace crucible::testing {

std::string fixture_path(const std::string& name) { return std::string(CRUCIBLE_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture_source(const std::string& name) { return read_file(fixture_path(name + ".als")); }

ModelSchema load_fixture(const std::string& name) { return load_schema(fixture_source(name)); }

namespace {

void atoms(TestCase& t, const ModelSchema& s, const std::string& sig, int n) {
  for (int i = 0; i < n; ++i) add_atom(t, s, sig, 40.0 * i, 0);
}

void connect(TestCase& t, const ModelSchema& s, const std::string& rel, std::vector<std::string> ids) {
  add_connection(t, s, rel, std::move(ids));
}

}  // namespace

TestCase lists_two_node(const ModelSchema& s) {
  TestCase t;
  t.name = "twoNode";
  atoms(t, s, "List", 1);
  atoms(t, s, "Node", 2);
  connect(t, s, "header", {"List0", "Node0"});
  connect(t, s, "link", {"Node0", "Node1"});
  set_predicate_state(t, s, "acyclic", PredicateState::Valid);
  return t;
}

TestCase lts_nondeterministic(const ModelSchema& s) {
  TestCase t;
  t.name = "nondeterministic";
  atoms(t, s, "State", 2);
  atoms(t, s, "Event", 3);
  connect(t, s, "trans", {"State1", "Event0", "State0"});
  connect(t, s, "trans", {"State1", "Event0", "State1"});
  set_atom_subsets(t, s, "State1", {"Init"});
  set_predicate_state(t, s, "inv3", PredicateState::Invalid);
  return t;
}

TestCase lts_maximal(const ModelSchema& s) {
  TestCase t;
  t.name = "maximal";
  atoms(t, s, "State", 3);
  atoms(t, s, "Event", 3);
  for (int a = 0; a < 3; ++a)
    for (int e = 0; e < 3; ++e)
      for (int b = 0; b < 3; ++b)
        connect(t, s, "trans",
                {"State" + std::to_string(a), "Event" + std::to_string(e), "State" + std::to_string(b)});
  set_atom_subsets(t, s, "State1", {"Init"});
  set_predicate_state(t, s, "inv3", PredicateState::Invalid);
  return t;
}

TestCase cv_first(const ModelSchema& s) {
  TestCase t;
  t.name = "firstFault";
  atoms(t, s, "User", 2);
  atoms(t, s, "Work", 3);
  atoms(t, s, "Id", 1);
  for (int w = 0; w < 3; ++w) connect(t, s, "profile", {"User1", "Work" + std::to_string(w)});
  for (int w = 0; w < 3; ++w) connect(t, s, "visible", {"User0", "Work" + std::to_string(w)});
  for (int w = 0; w < 3; ++w) connect(t, s, "ids", {"Work" + std::to_string(w), "Id0"});
  connect(t, s, "source", {"Work0", "User1"});
  connect(t, s, "source", {"Work1", "User1"});
  connect(t, s, "source", {"Work2", "User0"});
  set_predicate_state(t, s, "inv1", PredicateState::Invalid);
  return t;
}

TestCase cv_maximal(const ModelSchema& s) {
  TestCase t;
  t.name = "maximal";
  atoms(t, s, "User", 3);
  atoms(t, s, "Work", 3);
  atoms(t, s, "Id", 3);
  const std::vector<std::pair<int, int>> profile{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
  for (auto [u, w] : profile) connect(t, s, "profile", {"User" + std::to_string(u), "Work" + std::to_string(w)});
  for (int u = 0; u < 3; ++u)
    for (int w = 0; w < 3; ++w) connect(t, s, "visible", {"User" + std::to_string(u), "Work" + std::to_string(w)});
  for (int w = 0; w < 3; ++w)
    for (int i = 0; i < 3; ++i) connect(t, s, "ids", {"Work" + std::to_string(w), "Id" + std::to_string(i)});
  connect(t, s, "source", {"Work0", "User2"});
  connect(t, s, "source", {"Work1", "User2"});
  connect(t, s, "source", {"Work2", "User1"});
  set_predicate_state(t, s, "inv1", PredicateState::Invalid);
  return t;
}

TestCase random_canvas(const ModelSchema& schema, std::mt19937& rng, const RandomCanvasOptions& options) {
  TestCase t;
  t.name = "random";
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  for (const auto& sig : concrete_sigs(schema)) {
    auto it = options.maxAtoms.find(sig);
    int cap = it == options.maxAtoms.end() ? options.defaultMaxAtoms : it->second;
    int n = std::uniform_int_distribution<int>(0, cap)(rng);
    for (int i = 0; i < n; ++i)
      if (validate_atom_addition(t, schema, sig).allowed()) add_atom(t, schema, sig);
  }
  for (const auto& sig : schema.sigs) {
    if (sig.kind != SigKind::Subset) continue;
    for (const auto& a : std::vector<Atom>(t.atoms)) {
      if (!coin(0.4)) continue;
      auto subsets = a.subsets;
      subsets.push_back(sig.name);
      try {
        set_atom_subsets(t, schema, a.id, subsets);
      } catch (const GuidanceViolation&) {
      }
    }
  }
  if (!schema.fields.empty()) {
    for (int attempt = 0; attempt < options.connectionAttempts; ++attempt) {
      const FieldDecl& f = schema.fields[pick(schema.fields.size())];
      std::vector<std::string> tuple;
      for (int c = 0; c < f.arity(); ++c) {
        auto targets = valid_connection_targets(t, schema, f.name, tuple);
        if (targets.empty()) break;
        tuple.push_back(targets[pick(targets.size())]);
      }
      if (static_cast<int>(tuple.size()) == f.arity() &&
          validate_connection_addition(t, schema, f.name, tuple).allowed())
        add_connection(t, schema, f.name, tuple);
    }
  }
  for (const auto& p : schema.preds) {
    if (!coin(options.predicateProbability)) continue;
    std::vector<std::string> args;
    for (const auto& param : p.params) {
      std::vector<std::string> fits;
      for (const auto& a : t.atoms)
        if (is_member(schema, a, param.sig)) fits.push_back(a.id);
      if (fits.empty()) break;
      args.push_back(fits[pick(fits.size())]);
    }
    if (args.size() != p.params.size()) continue;
    set_predicate_state(t, schema, p.name, coin(0.5) ? PredicateState::Valid : PredicateState::Invalid, args);
  }
  return t;
}

TestCase benchmark_canvas(const std::string& model, const ModelSchema& schema, int atomCount, int connections) {
  TestCase t;
  t.name = "bench";
  std::vector<std::pair<std::string, int>> split;
  if (model == "lts") {
    int states = (atomCount + 1) / 2;
    split = {{"State", states}, {"Event", atomCount - states}};
  } else if (model == "cv") {
    int inst = atomCount / 9;
    int rest = atomCount - inst;
    int users = rest / 3, ids = rest / 6;
    split = {{"User", users}, {"Institution", inst}, {"Id", ids}, {"Work", rest - users - ids}};
  } else {
    throw std::invalid_argument("unknown benchmark model " + model);
  }
  for (const auto& [sig, n] : split)
    for (int i = 0; i < n; ++i) add_atom(t, schema, sig, 10.0 * i, 0);
  if (model == "lts" && !t.atoms.empty()) set_atom_subsets(t, schema, "State0", {"Init"});

  // Walk candidate tuples relation by relation in a fixed order, interleaving
  // relations so every one of them gets used.
  std::vector<std::vector<std::vector<std::string>>> pools;
  for (const auto& f : schema.fields) {
    std::vector<std::vector<std::string>> tuples{{}};
    for (int c = 0; c < f.arity(); ++c) {
      std::vector<std::vector<std::string>> next;
      for (const auto& prefix : tuples)
        for (const auto& a : t.atoms)
          if (is_member(schema, a, f.column(c))) {
            auto tuple = prefix;
            tuple.push_back(a.id);
            next.push_back(std::move(tuple));
          }
      tuples = std::move(next);
    }
    pools.push_back(std::move(tuples));
  }
  std::vector<std::size_t> cursor(pools.size(), 0);
  int made = 0;
  bool progress = true;
  while (made < connections && progress) {
    progress = false;
    for (std::size_t fi = 0; fi < pools.size() && made < connections; ++fi) {
      while (cursor[fi] < pools[fi].size()) {
        const auto& tuple = pools[fi][cursor[fi]++];
        if (validate_connection_addition(t, schema, schema.fields[fi].name, tuple).allowed()) {
          add_connection(t, schema, schema.fields[fi].name, tuple);
          ++made;
          progress = true;
          break;
        }
      }
    }
  }
  if (made < connections)
    throw std::runtime_error("benchmark canvas has room for only " + std::to_string(made) + " connections");
  return t;
}

}  // namespace crucible::testing
