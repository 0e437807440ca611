#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crucible/instance.hpp"

namespace crucible {

struct ModelSchema;

enum class PredicateState { DontTest, Valid, Invalid };
std::string_view to_string(PredicateState state) noexcept;
/// Accepts "dontTest", "valid", "invalid".
std::optional<PredicateState> parse_predicate_state(std::string_view text) noexcept;

struct Atom {
  std::string id;
  std::string sig;
  std::string nickname;
  std::vector<std::string> subsets;  // subset-sig markers, in the order they were set
  double x = 0;
  double y = 0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Connection {
  std::string relation;
  std::vector<std::string> atomIds;

  friend bool operator==(const Connection&, const Connection&) = default;
};

struct PredicateExpectation {
  PredicateState state = PredicateState::DontTest;
  std::vector<std::string> args;

  friend bool operator==(const PredicateExpectation&, const PredicateExpectation&) = default;
};

struct TestCase {
  std::string name;
  std::vector<Atom> atoms;  // creation order
  std::vector<Connection> connections;  // creation order
  /// Only predicates under test are present.
  std::map<std::string, PredicateExpectation> predicateStates;
  std::map<std::string, int> nicknameCounters;

  const Atom* find_atom(std::string_view id) const;
  const Atom& atom(std::string_view id) const;  // throws UnknownAtom

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

/// True iff the atom belongs to `sig`, either through its own sig and its
/// extends/in ancestors or through one of its subset markers.
bool is_member(const ModelSchema& schema, const Atom& atom, std::string_view sig);

// Canvas edits. Each one validates against the guidance rules first and
// throws GuidanceViolation when they block the edit.

const Atom& add_atom(TestCase& test, const ModelSchema& schema, const std::string& sig, double x = 0,
                     double y = 0);
/// Removes the atom with its incident connections. Predicate expectations that
/// used it as an argument go back to dontTest. Returns the removed connections.
std::vector<Connection> remove_atom(TestCase& test, std::string_view atomId);
void move_atom(TestCase& test, std::string_view atomId, double x, double y);
/// Replaces the subset markers of an atom.
void set_atom_subsets(TestCase& test, const ModelSchema& schema, std::string_view atomId,
                      std::vector<std::string> subsets);
const Connection& add_connection(TestCase& test, const ModelSchema& schema, const std::string& relation,
                                 std::vector<std::string> atomIds);
/// A higher-arity tuple is drawn as a chain of segments; removing it by index
/// takes the whole tuple. Returns the removed connections.
std::vector<Connection> remove_connection(TestCase& test, std::size_t index);
void set_predicate_state(TestCase& test, const ModelSchema& schema, const std::string& pred,
                         PredicateState state, std::vector<std::string> args = {});

/// Sig sets include extends-ancestors and subset markers; every sig and field
/// of the schema has an entry.
Valuation derive_valuation(const TestCase& test, const ModelSchema& schema);

}  // namespace crucible
