#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "crucible/ast.hpp"
#include "crucible/instance.hpp"

namespace crucible {

struct ModelSchema;

/// Upper bound on direct atoms per concrete sig.
struct Scope {
  int defaultCount = 3;
  std::map<std::string, int> perSig;

  int count(const std::string& sig) const {
    auto it = perSig.find(sig);
    return it == perSig.end() ? defaultCount : it->second;
  }
};

struct OracleResult {
  bool satisfiable = false;
  std::optional<Valuation> witness;
  std::uint64_t valuationsChecked = 0;
};

inline constexpr int kOracleMaxUniverse = 12;
inline constexpr std::uint64_t kOracleMaxSearch = 1ULL << 26;

/// Exhaustively searches every valuation within `scope` that satisfies the
/// model's implicit constraints and its facts, and reports whether one of them
/// satisfies `formula`. Atom counts are tried in ascending order and tuple sets
/// in bitmask order, so the witness is reproducible.
/// Throws UniverseTooLarge when the scope admits more than kOracleMaxUniverse
/// atoms or the search would exceed kOracleMaxSearch valuations.
OracleResult enumerate_satisfiable(const ModelSchema& schema, const Formula& formula, const Scope& scope = {});

}  // namespace crucible
