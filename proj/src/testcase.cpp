#include "crucible/testcase.hpp"

#include <algorithm>

#include "crucible/guidance.hpp"
#include "crucible/schema.hpp"

namespace crucible {

namespace {

Atom& mutable_atom(TestCase& test, std::string_view id) {
  auto it = std::find_if(test.atoms.begin(), test.atoms.end(), [&](const Atom& a) { return a.id == id; });
  if (it == test.atoms.end()) throw Error(ErrorCode::UnknownAtom, "unknown atom '" + std::string(id) + "'");
  return *it;
}

void require(const GuidanceVerdict& v) {
  if (v.allowed()) return;
  throw GuidanceViolation(v, v.rule == "abstract" ? ErrorCode::AbstractSig : ErrorCode::GuidanceViolation);
}

}  // namespace

std::string_view to_string(PredicateState state) noexcept {
  switch (state) {
    case PredicateState::DontTest: return "dontTest";
    case PredicateState::Valid: return "valid";
    case PredicateState::Invalid: return "invalid";
  }
  return "dontTest";
}

std::optional<PredicateState> parse_predicate_state(std::string_view text) noexcept {
  if (text == "dontTest") return PredicateState::DontTest;
  if (text == "valid") return PredicateState::Valid;
  if (text == "invalid") return PredicateState::Invalid;
  return std::nullopt;
}

const Atom* TestCase::find_atom(std::string_view id) const {
  auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.id == id; });
  return it == atoms.end() ? nullptr : &*it;
}

const Atom& TestCase::atom(std::string_view id) const {
  if (const Atom* a = find_atom(id)) return *a;
  throw Error(ErrorCode::UnknownAtom, "unknown atom '" + std::string(id) + "'");
}

bool is_member(const ModelSchema& schema, const Atom& atom, std::string_view sig) {
  if (is_subtype(schema, atom.sig, sig)) return true;
  return std::any_of(atom.subsets.begin(), atom.subsets.end(),
                     [&](const std::string& m) { return is_subtype(schema, m, sig); });
}

const Atom& add_atom(TestCase& test, const ModelSchema& schema, const std::string& sig, double x, double y) {
  require(validate_atom_addition(test, schema, sig));
  int& counter = test.nicknameCounters[sig];
  Atom atom;
  atom.sig = sig;
  atom.nickname = sig + std::to_string(counter++);
  atom.id = atom.nickname;
  atom.x = x;
  atom.y = y;
  test.atoms.push_back(std::move(atom));
  return test.atoms.back();
}

std::vector<Connection> remove_atom(TestCase& test, std::string_view atomId) {
  mutable_atom(test, atomId);
  std::vector<Connection> removed;
  std::vector<Connection> kept;
  for (auto& c : test.connections) {
    bool incident = std::find(c.atomIds.begin(), c.atomIds.end(), atomId) != c.atomIds.end();
    (incident ? removed : kept).push_back(std::move(c));
  }
  test.connections = std::move(kept);
  for (auto it = test.predicateStates.begin(); it != test.predicateStates.end();) {
    const auto& args = it->second.args;
    if (std::find(args.begin(), args.end(), atomId) != args.end()) it = test.predicateStates.erase(it);
    else ++it;
  }
  std::erase_if(test.atoms, [&](const Atom& a) { return a.id == atomId; });
  return removed;
}

void move_atom(TestCase& test, std::string_view atomId, double x, double y) {
  Atom& a = mutable_atom(test, atomId);
  a.x = x;
  a.y = y;
}

void set_atom_subsets(TestCase& test, const ModelSchema& schema, std::string_view atomId,
                      std::vector<std::string> subsets) {
  Atom& target = mutable_atom(test, atomId);
  Atom candidate = target;
  candidate.subsets.clear();
  for (const auto& m : subsets) {
    const SigDecl& sig = schema.sig(m);
    if (sig.kind != SigKind::Subset)
      require(GuidanceVerdict::block("notSubsetSig", m + " is not a subset signature", m));
    if (std::find(candidate.subsets.begin(), candidate.subsets.end(), m) == candidate.subsets.end())
      candidate.subsets.push_back(m);
  }
  for (const auto& m : candidate.subsets) {
    const SigDecl& sig = schema.sig(m);
    bool inParent = std::any_of(sig.subsetOf.begin(), sig.subsetOf.end(),
                                [&](const std::string& p) { return is_member(schema, candidate, p); });
    if (!inParent)
      require(GuidanceVerdict::block("typing", candidate.nickname + " is not in a parent of " + m, m));
    if (sig.multiplicity == SigMultiplicity::One || sig.multiplicity == SigMultiplicity::Lone) {
      bool taken = std::any_of(test.atoms.begin(), test.atoms.end(), [&](const Atom& other) {
        return other.id != candidate.id &&
               std::find(other.subsets.begin(), other.subsets.end(), m) != other.subsets.end();
      });
      if (taken)
        require(GuidanceVerdict::block("subsetUpperBound",
                                       std::string(keyword(sig.multiplicity)) + " sig " + m +
                                           " allows at most one atom",
                                       m));
    }
  }
  // Connections and predicate arguments that need a dropped marker block the change.
  for (const auto& c : test.connections) {
    const FieldDecl& f = schema.field(c.relation);
    for (std::size_t i = 0; i < c.atomIds.size(); ++i)
      if (c.atomIds[i] == candidate.id && !is_member(schema, candidate, f.column(i)))
        require(GuidanceVerdict::block("markerInUse",
                                       "a " + c.relation + " connection needs " + candidate.nickname +
                                           " to stay in " + f.column(i),
                                       c.relation));
  }
  for (const auto& [name, exp] : test.predicateStates) {
    const PredDecl& p = *schema.find_pred(name);
    for (std::size_t i = 0; i < exp.args.size() && i < p.params.size(); ++i)
      if (exp.args[i] == candidate.id && !is_member(schema, candidate, p.params[i].sig))
        require(GuidanceVerdict::block("markerInUse",
                                       name + " uses " + candidate.nickname + " as a " + p.params[i].sig,
                                       name));
  }
  target.subsets = std::move(candidate.subsets);
}

const Connection& add_connection(TestCase& test, const ModelSchema& schema, const std::string& relation,
                                 std::vector<std::string> atomIds) {
  require(validate_connection_addition(test, schema, relation, atomIds));
  test.connections.push_back({relation, std::move(atomIds)});
  return test.connections.back();
}

std::vector<Connection> remove_connection(TestCase& test, std::size_t index) {
  if (index >= test.connections.size())
    throw Error(ErrorCode::UnknownConnection, "no connection at index " + std::to_string(index));
  std::vector<Connection> removed{std::move(test.connections[index])};
  test.connections.erase(test.connections.begin() + static_cast<std::ptrdiff_t>(index));
  return removed;
}

void set_predicate_state(TestCase& test, const ModelSchema& schema, const std::string& pred,
                         PredicateState state, std::vector<std::string> args) {
  const PredDecl* decl = schema.find_pred(pred);
  if (!decl) throw Error(ErrorCode::UnknownPred, "unknown predicate '" + pred + "'");
  if (state == PredicateState::DontTest) {
    test.predicateStates.erase(pred);
    return;
  }
  if (args.size() != decl->params.size())
    throw Error(ErrorCode::BadArgs, "'" + pred + "' expects " + std::to_string(decl->params.size()) +
                                        " argument(s) but got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Atom* a = test.find_atom(args[i]);
    if (!a) throw Error(ErrorCode::BadArgs, "unknown atom '" + args[i] + "'");
    if (!is_member(schema, *a, decl->params[i].sig))
      throw Error(ErrorCode::BadArgs, a->nickname + " is not a " + decl->params[i].sig);
  }
  test.predicateStates[pred] = {state, std::move(args)};
}

Valuation derive_valuation(const TestCase& test, const ModelSchema& schema) {
  Valuation v;
  for (const auto& sig : schema.sigs) v.sigSets[sig.name];
  for (const auto& f : schema.fields) v.relTuples[f.name];
  for (const auto& a : test.atoms) {
    v.sigSets[a.sig].insert(a.id);
    for (const auto& anc : schema.ancestors_of(a.sig)) v.sigSets[anc].insert(a.id);
    for (const auto& m : a.subsets) {
      // A marker also implies membership of subset sigs it is nested in.
      for (const auto& sig : schema.sigs)
        if (sig.kind == SigKind::Subset && is_subtype(schema, m, sig.name)) v.sigSets[sig.name].insert(a.id);
    }
  }
  for (const auto& c : test.connections) v.relTuples[c.relation].insert(c.atomIds);
  return v;
}

}  // namespace crucible
