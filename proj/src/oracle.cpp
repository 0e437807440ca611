#include "crucible/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "crucible/evaluator.hpp"
#include "crucible/schema.hpp"

namespace crucible {

namespace {

using Tuple = std::vector<AtomIndex>;

bool count_ok(FieldMultiplicity m, std::size_t n) {
  switch (m) {
    case FieldMultiplicity::Set: return true;
    case FieldMultiplicity::Some: return n >= 1;
    case FieldMultiplicity::Lone: return n <= 1;
    case FieldMultiplicity::One: return n == 1;
  }
  return true;
}

bool sig_count_ok(SigMultiplicity m, std::size_t n) {
  switch (m) {
    case SigMultiplicity::Any: return true;
    case SigMultiplicity::One: return n == 1;
    case SigMultiplicity::Lone: return n <= 1;
    case SigMultiplicity::Some: return n >= 1;
  }
  return true;
}

std::vector<Tuple> cartesian(const std::vector<std::vector<AtomIndex>>& columns) {
  std::vector<Tuple> out{{}};
  for (const auto& col : columns) {
    std::vector<Tuple> next;
    for (const auto& prefix : out)
      for (AtomIndex a : col) {
        Tuple t = prefix;
        t.push_back(a);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<AtomIndex> members(const TupleSet& s) {
  std::vector<AtomIndex> out;
  for (auto k : s.keys()) out.push_back(static_cast<AtomIndex>(k));
  return out;
}

class Search {
 public:
  Search(const ModelSchema& schema, const Formula& formula, const Scope& scope)
      : schema_(schema), formula_(formula), scope_(scope) {}

  OracleResult run() {
    concrete_ = concrete_sigs(schema_);
    int universe = 0;
    for (const auto& s : concrete_) universe += scope_.count(s);
    if (universe > kOracleMaxUniverse)
      throw Error(ErrorCode::UniverseTooLarge, "scope admits " + std::to_string(universe) +
                                                   " atoms, more than " + std::to_string(kOracleMaxUniverse));
    for (const auto& s : schema_.sigs)
      if (s.kind == SigKind::Subset) subsets_.push_back(&s);
    order_subsets();

    std::vector<int> counts(concrete_.size(), 0);
    for (;;) {
      if (try_counts(counts)) break;
      std::size_t i = concrete_.size();
      while (i > 0 && counts[i - 1] == scope_.count(concrete_[i - 1])) counts[--i] = 0;
      if (i == 0) break;
      ++counts[i - 1];
    }
    return std::move(result_);
  }

 private:
  // Parents before children so candidate sets are known when a subset sig is reached.
  void order_subsets() {
    std::vector<const SigDecl*> ordered;
    std::function<void(const SigDecl*)> place = [&](const SigDecl* s) {
      if (std::find(ordered.begin(), ordered.end(), s) != ordered.end()) return;
      for (const auto& p : s->subsetOf) {
        const SigDecl& parent = schema_.sig(p);
        if (parent.kind == SigKind::Subset) place(&parent);
      }
      ordered.push_back(s);
    };
    for (const auto* s : subsets_) place(s);
    subsets_ = std::move(ordered);
  }

  bool try_counts(const std::vector<int>& counts) {
    inst_ = Instance();
    std::map<std::string, TupleSet> sets;
    for (const auto& s : schema_.sigs) sets.emplace(s.name, TupleSet(1));
    for (std::size_t i = 0; i < concrete_.size(); ++i) {
      for (int k = 0; k < counts[i]; ++k) {
        AtomIndex a = inst_.intern(concrete_[i] + "$" + std::to_string(k));
        sets[concrete_[i]].insert({a});
        for (const auto& anc : schema_.ancestors_of(concrete_[i])) sets[anc].insert({a});
      }
    }
    for (const auto& s : schema_.sigs)
      if (s.kind != SigKind::Subset && !sig_count_ok(s.multiplicity, sets[s.name].size())) return false;
    sets_ = std::move(sets);
    return choose_subset(0);
  }

  bool choose_subset(std::size_t i) {
    if (i == subsets_.size()) return choose_fields();
    const SigDecl& sig = *subsets_[i];
    TupleSet candidates(1);
    for (const auto& p : sig.subsetOf) candidates = candidates.unite(sets_[p]);
    auto atoms = members(candidates);
    for (std::uint64_t mask = 0; mask < (1ULL << atoms.size()); ++mask) {
      if (!sig_count_ok(sig.multiplicity, std::popcount(mask))) continue;
      TupleSet chosen(1);
      for (std::size_t b = 0; b < atoms.size(); ++b)
        if (mask >> b & 1) chosen.insert({atoms[b]});
      sets_[sig.name] = std::move(chosen);
      if (choose_subset(i + 1)) return true;
    }
    sets_[sig.name] = TupleSet(1);
    return false;
  }

  // A slice is the set of tuples of one field that start at one owner atom.
  struct Slice {
    std::size_t field;
    std::vector<std::vector<std::uint64_t>> options;  // each option: full tuple keys
  };

  bool slice_ok(const FieldDecl& f, const std::vector<Tuple>& tuples) const {
    if (f.arity() == 2) return count_ok(f.multiplicity, tuples.size());
    for (std::size_t arrow = 0; arrow < f.arrowMults.size(); ++arrow) {
      const std::size_t cut = arrow + 1;  // slice columns [0, cut) are left of the arrow
      auto side = [&](FieldMultiplicity m, bool leftSide) {
        if (m == FieldMultiplicity::Set) return true;
        std::vector<std::vector<AtomIndex>> cols;
        const std::size_t from = leftSide ? 0 : cut, to = leftSide ? cut : f.columns.size();
        for (std::size_t c = from; c < to; ++c) cols.push_back(members(sets_.at(f.columns[c])));
        for (const auto& key : cartesian(cols)) {
          std::size_t n = 0;
          for (const auto& t : tuples)
            if (std::equal(key.begin(), key.end(), t.begin() + static_cast<std::ptrdiff_t>(from))) ++n;
          if (!count_ok(m, n)) return false;
        }
        return true;
      };
      if (!side(f.arrowMults[arrow].right, true) || !side(f.arrowMults[arrow].left, false)) return false;
    }
    return true;
  }

  bool choose_fields() {
    std::vector<Slice> slices;
    std::uint64_t combos = 1;
    for (std::size_t fi = 0; fi < schema_.fields.size(); ++fi) {
      const FieldDecl& f = schema_.fields[fi];
      std::vector<std::vector<AtomIndex>> cols;
      for (const auto& c : f.columns) cols.push_back(members(sets_.at(c)));
      const auto candidates = cartesian(cols);
      if (candidates.size() > 20)
        throw Error(ErrorCode::UniverseTooLarge,
                    "field " + f.name + " has " + std::to_string(candidates.size()) + " candidate tuples per atom");
      for (AtomIndex owner : members(sets_.at(f.owner))) {
        Slice slice{fi, {}};
        for (std::uint64_t mask = 0; mask < (1ULL << candidates.size()); ++mask) {
          std::vector<Tuple> tuples;
          for (std::size_t b = 0; b < candidates.size(); ++b)
            if (mask >> b & 1) tuples.push_back(candidates[b]);
          if (!slice_ok(f, tuples)) continue;
          std::vector<std::uint64_t> keys;
          for (const auto& t : tuples) {
            Tuple full{owner};
            full.insert(full.end(), t.begin(), t.end());
            keys.push_back(TupleSet::pack(full));
          }
          slice.options.push_back(std::move(keys));
        }
        if (slice.options.empty()) return false;
        combos *= slice.options.size();
        if (combos > kOracleMaxSearch)
          throw Error(ErrorCode::UniverseTooLarge,
                      "search space exceeds " + std::to_string(kOracleMaxSearch) + " valuations");
        slices.push_back(std::move(slice));
      }
    }
    searched_ += combos;
    if (searched_ > kOracleMaxSearch)
      throw Error(ErrorCode::UniverseTooLarge, "search space exceeds " + std::to_string(kOracleMaxSearch) +
                                                   " valuations");
    for (const auto& [name, set] : sets_) inst_.set_sig(name, set);
    inst_.seal();
    std::vector<std::size_t> pick(slices.size(), 0);
    for (;;) {
      std::vector<std::vector<std::uint64_t>> fieldKeys(schema_.fields.size());
      for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto& keys = slices[i].options[pick[i]];
        auto& dst = fieldKeys[slices[i].field];
        dst.insert(dst.end(), keys.begin(), keys.end());
      }
      for (std::size_t fi = 0; fi < schema_.fields.size(); ++fi)
        inst_.set_field(schema_.fields[fi].name,
                        TupleSet::from_keys(schema_.fields[fi].arity(), std::move(fieldKeys[fi])));
      ++result_.valuationsChecked;
      if (satisfied()) {
        result_.satisfiable = true;
        result_.witness = inst_.to_valuation();
        return true;
      }
      std::size_t i = slices.size();
      while (i > 0 && pick[i - 1] + 1 == slices[i - 1].options.size()) pick[--i] = 0;
      if (i == 0) return false;
      ++pick[i - 1];
    }
  }

  bool satisfied() {
    Env env(inst_, schema_);
    for (const auto& fact : schema_.facts)
      if (!eval_formula(*fact.body, env)) return false;
    return eval_formula(formula_, env);
  }

  const ModelSchema& schema_;
  const Formula& formula_;
  const Scope& scope_;
  std::vector<std::string> concrete_;
  std::vector<const SigDecl*> subsets_;
  std::map<std::string, TupleSet> sets_;
  Instance inst_;
  std::uint64_t searched_ = 0;
  OracleResult result_;
};

}  // namespace

OracleResult enumerate_satisfiable(const ModelSchema& schema, const Formula& formula, const Scope& scope) {
  return Search(schema, formula, scope).run();
}

}  // namespace crucible
