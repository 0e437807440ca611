#include "crucible/structural.hpp"

#include <map>

#include "crucible/evaluator.hpp"
#include "crucible/schema.hpp"

namespace crucible {

namespace {

bool mult_holds(FieldMultiplicity m, std::size_t n) {
  switch (m) {
    case FieldMultiplicity::Set: return true;
    case FieldMultiplicity::Some: return n >= 1;
    case FieldMultiplicity::Lone: return n <= 1;
    case FieldMultiplicity::One: return n == 1;
  }
  return true;
}

bool needs_lower(FieldMultiplicity m) { return m == FieldMultiplicity::Some || m == FieldMultiplicity::One; }
bool needs_upper(FieldMultiplicity m) { return m == FieldMultiplicity::Lone || m == FieldMultiplicity::One; }

class Checker {
 public:
  Checker(const Instance& inst, const ModelSchema& schema) : inst_(inst), schema_(schema) {}

  std::vector<Diagnostic> run() {
    for (const auto& sig : schema_.sigs) sig_multiplicity(sig);
    hierarchy();
    for (const auto& f : schema_.fields) {
      typing(f);
      if (f.arity() == 2) binary_multiplicity(f);
      else if (!f.arrowMults.empty()) arrow_multiplicity(f);
    }
    return std::move(out_);
  }

 private:
  void add(std::string rule, std::string subject, bool holds, std::string detail) {
    out_.push_back({ConstraintKind::Structural, std::move(rule), std::move(subject), holds, std::move(detail)});
  }

  std::string atom_list(const TupleSet& s) const {
    std::string out;
    for (auto k : s.keys()) {
      if (!out.empty()) out += ", ";
      out += inst_.atom_name(static_cast<AtomIndex>(k));
    }
    return out;
  }

  void sig_multiplicity(const SigDecl& sig) {
    const std::size_t n = inst_.sig(sig.name).size();
    const std::string kw(keyword(sig.multiplicity));
    const std::string count = sig.name + " has " + std::to_string(n) + " atom(s)";
    if (sig.multiplicity == SigMultiplicity::One || sig.multiplicity == SigMultiplicity::Some)
      add("sigLowerBound", sig.name, n >= 1, kw + " sig " + sig.name + ": " + count);
    if (sig.multiplicity == SigMultiplicity::One || sig.multiplicity == SigMultiplicity::Lone)
      add("sigUpperBound", sig.name, n <= 1, kw + " sig " + sig.name + ": " + count);
  }

  void hierarchy() {
    std::vector<const SigDecl*> tops;
    for (const auto& sig : schema_.sigs) {
      if (sig.kind == SigKind::Top) tops.push_back(&sig);
      if (sig.kind == SigKind::Extends) {
        TupleSet stray = inst_.sig(sig.name).minus(inst_.sig(sig.parent));
        add("extendsContainment", sig.name, stray.empty(),
            sig.name + " atoms outside " + sig.parent + ": {" + atom_list(stray) + "}");
      }
      if (sig.kind == SigKind::Subset) {
        TupleSet parents(1);
        for (const auto& p : sig.subsetOf) parents = parents.unite(inst_.sig(p));
        TupleSet stray = inst_.sig(sig.name).minus(parents);
        add("subsetContainment", sig.name, stray.empty(),
            sig.name + " atoms outside its parents: {" + atom_list(stray) + "}");
      }
      auto children = schema_.children_of(sig.name);
      if (children.size() >= 2) disjoint(sig.name, children);
      if (sig.isAbstract && !children.empty()) {
        TupleSet covered(1);
        for (const auto& c : children) covered = covered.unite(inst_.sig(c));
        TupleSet direct = inst_.sig(sig.name).minus(covered);
        add("abstractCover", sig.name, direct.empty(),
            "abstract " + sig.name + " has direct atoms: {" + atom_list(direct) + "}");
      }
    }
    if (tops.size() >= 2) {
      std::vector<std::string> names;
      for (const auto* t : tops) names.push_back(t->name);
      disjoint("univ", names);
    }
  }

  void disjoint(const std::string& subject, const std::vector<std::string>& sigs) {
    TupleSet seen(1), shared(1);
    for (const auto& s : sigs) {
      const TupleSet& set = inst_.sig(s);
      shared = shared.unite(seen.intersect(set));
      seen = seen.unite(set);
    }
    add("disjoint", subject, shared.empty(), "atoms in more than one of the sigs under " + subject + ": {" +
                                                 atom_list(shared) + "}");
  }

  void typing(const FieldDecl& f) {
    TupleSet bound = inst_.sig(f.owner);
    for (const auto& c : f.columns) bound = bound.product(inst_.sig(c));
    TupleSet stray = inst_.field(f.name).minus(bound);
    add("fieldTyping", f.name, stray.empty(),
        std::to_string(stray.size()) + " tuple(s) of " + f.name + " outside its declared type");
  }

  void binary_multiplicity(const FieldDecl& f) {
    if (f.multiplicity == FieldMultiplicity::Set) return;
    std::map<std::uint64_t, std::size_t> counts;
    const TupleSet& rel = inst_.field(f.name);
    for (auto k : rel.keys()) ++counts[rel.column(k, 0)];
    const std::string kw(keyword(f.multiplicity));
    auto check = [&](bool lower) {
      std::string bad;
      for (auto a : inst_.sig(f.owner).keys()) {
        std::size_t n = counts.count(a) ? counts[a] : 0;
        bool ok = lower ? n >= 1 : n <= 1;
        if (!ok) bad += (bad.empty() ? "" : ", ") + inst_.atom_name(static_cast<AtomIndex>(a));
      }
      add(lower ? "fieldLowerBound" : "fieldUpperBound", f.name, bad.empty(),
          f.name + " : " + kw + " " + f.columns[0] + (bad.empty() ? "" : " violated by " + bad));
    };
    if (needs_lower(f.multiplicity)) check(true);
    if (needs_upper(f.multiplicity)) check(false);
  }

  // Every product of the sig sets of `cols`, packed like TupleSet keys.
  std::vector<std::uint64_t> column_product(const FieldDecl& f, int from, int to) const {
    std::vector<std::uint64_t> keys{0};
    for (int c = from; c < to; ++c) {
      std::vector<std::uint64_t> next;
      for (auto k : keys)
        for (auto a : inst_.sig(f.column(c)).keys()) next.push_back((k << 16) | a);
      keys = std::move(next);
    }
    return keys;
  }

  // For `f : A m1 -> m2 B -> C` owned by S, each slice s.f must satisfy the
  // arrow multiplicities in both directions at every arrow.
  void arrow_multiplicity(const FieldDecl& f) {
    const TupleSet& rel = inst_.field(f.name);
    const int k = f.arity();
    bool holds = true;
    std::string where;
    for (auto owner : inst_.sig(f.owner).keys()) {
      for (std::size_t arrow = 0; arrow < f.arrowMults.size() && holds; ++arrow) {
        const ArrowMult& m = f.arrowMults[arrow];
        const int split = static_cast<int>(arrow) + 2;  // first column right of the arrow
        std::map<std::uint64_t, std::size_t> leftCounts, rightCounts;
        for (auto key : rel.keys()) {
          if (rel.column(key, 0) != owner) continue;
          std::uint64_t left = 0, right = 0;
          for (int c = 1; c < split; ++c) left = (left << 16) | rel.column(key, c);
          for (int c = split; c < k; ++c) right = (right << 16) | rel.column(key, c);
          ++leftCounts[left];
          ++rightCounts[right];
        }
        auto side = [&](FieldMultiplicity mult, std::map<std::uint64_t, std::size_t>& counts, int from, int to) {
          if (mult == FieldMultiplicity::Set) return true;
          if (!needs_lower(mult)) {
            for (const auto& [key, n] : counts)
              if (n > 1) return false;
            return true;
          }
          for (auto key : column_product(f, from, to)) {
            auto it = counts.find(key);
            if (!mult_holds(mult, it == counts.end() ? 0 : it->second)) return false;
          }
          return true;
        };
        if (!side(m.right, leftCounts, 1, split) || !side(m.left, rightCounts, split, k)) {
          holds = false;
          where = " at arrow " + std::to_string(arrow + 1) + " for " +
                  inst_.atom_name(static_cast<AtomIndex>(owner));
        }
      }
      if (!holds) break;
    }
    add("arrowMultiplicity", f.name, holds, "arrow multiplicities of " + f.name + (holds ? " hold" : " violated" + where));
  }

  const Instance& inst_;
  const ModelSchema& schema_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::string_view to_string(ConstraintKind kind) noexcept {
  switch (kind) {
    case ConstraintKind::Structural: return "structural";
    case ConstraintKind::Fact: return "fact";
    case ConstraintKind::Predicate: return "predicate";
  }
  return "structural";
}

std::vector<Diagnostic> check_structural(const Instance& instance, const ModelSchema& schema) {
  return Checker(instance, schema).run();
}

std::vector<Diagnostic> check_facts(const Instance& instance, const ModelSchema& schema) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < schema.facts.size(); ++i) {
    const auto& fact = schema.facts[i];
    Env env(instance, schema);
    bool holds = eval_formula(*fact.body, env);
    std::string subject = fact.name.empty() ? "fact#" + std::to_string(i + 1) : fact.name;
    out.push_back({ConstraintKind::Fact, "", subject, holds, holds ? "holds" : "does not hold"});
  }
  return out;
}

}  // namespace crucible
