#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crucible/tuple_set.hpp"

namespace crucible {

struct ModelSchema;

/// Assignment of atom ids to every sig and of atom-id tuples to every field.
struct Valuation {
  std::map<std::string, std::set<std::string>> sigSets;
  std::map<std::string, std::set<std::vector<std::string>>> relTuples;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// A valuation with atoms interned to indices, ready for evaluation.
class Instance {
 public:
  Instance() = default;
  /// Every sig and field of `schema` gets an entry, empty when absent from
  /// `valuation`.
  static Instance from_valuation(const Valuation& valuation, const ModelSchema& schema);

  AtomIndex intern(const std::string& atom);
  std::optional<AtomIndex> find_atom(const std::string& atom) const;
  const std::string& atom_name(AtomIndex index) const { return atoms_[index]; }
  std::size_t atom_count() const { return atoms_.size(); }

  void set_sig(const std::string& name, TupleSet value) { sigs_[name] = std::move(value); }
  void set_field(const std::string& name, TupleSet value) { fields_[name] = std::move(value); }
  /// Empty set for names that were never assigned.
  const TupleSet& sig(const std::string& name) const;
  const TupleSet& field(const std::string& name) const;

  /// Recomputes univ and iden from the sig sets. Call after the last set_sig.
  void seal();
  const TupleSet& universe() const { return universe_; }
  const TupleSet& iden() const { return iden_; }

  Valuation to_valuation() const;

 private:
  std::vector<std::string> atoms_;
  std::map<std::string, AtomIndex, std::less<>> index_;
  std::map<std::string, TupleSet, std::less<>> sigs_;
  std::map<std::string, TupleSet, std::less<>> fields_;
  TupleSet universe_{1};
  TupleSet iden_{2};
};

}  // namespace crucible
