#include "crucible/instance.hpp"

#include "crucible/error.hpp"
#include "crucible/schema.hpp"

namespace crucible {

Instance Instance::from_valuation(const Valuation& valuation, const ModelSchema& schema) {
  Instance inst;
  for (const auto& [sig, atoms] : valuation.sigSets)
    for (const auto& a : atoms) inst.intern(a);
  for (const auto& sig : schema.sigs) {
    TupleSet set(1);
    if (auto it = valuation.sigSets.find(sig.name); it != valuation.sigSets.end())
      for (const auto& a : it->second) set.push_key(inst.intern(a));
    set.normalize();
    inst.set_sig(sig.name, std::move(set));
  }
  for (const auto& field : schema.fields) {
    TupleSet set(field.arity());
    if (auto it = valuation.relTuples.find(field.name); it != valuation.relTuples.end()) {
      std::vector<AtomIndex> buf;
      for (const auto& tuple : it->second) {
        if (static_cast<int>(tuple.size()) != field.arity())
          throw Error(ErrorCode::ArityMismatch, "tuple of wrong arity for '" + field.name + "'");
        buf.clear();
        for (const auto& a : tuple) buf.push_back(inst.intern(a));
        set.push_key(TupleSet::pack(buf));
      }
    }
    set.normalize();
    inst.set_field(field.name, std::move(set));
  }
  inst.seal();
  return inst;
}

AtomIndex Instance::intern(const std::string& atom) {
  if (auto it = index_.find(atom); it != index_.end()) return it->second;
  if (atoms_.size() > 0xFFFF) throw Error(ErrorCode::UniverseTooLarge, "too many atoms");
  auto idx = static_cast<AtomIndex>(atoms_.size());
  atoms_.push_back(atom);
  index_.emplace(atom, idx);
  return idx;
}

std::optional<AtomIndex> Instance::find_atom(const std::string& atom) const {
  if (auto it = index_.find(atom); it != index_.end()) return it->second;
  return std::nullopt;
}

const TupleSet& Instance::sig(const std::string& name) const {
  static const TupleSet kEmpty(1);
  auto it = sigs_.find(name);
  return it == sigs_.end() ? kEmpty : it->second;
}

const TupleSet& Instance::field(const std::string& name) const {
  static const TupleSet kEmpty(2);
  auto it = fields_.find(name);
  return it == fields_.end() ? kEmpty : it->second;
}

void Instance::seal() {
  universe_ = TupleSet(1);
  for (const auto& [name, set] : sigs_) universe_ = universe_.unite(set);
  iden_ = TupleSet(2);
  for (auto k : universe_.keys()) iden_.push_key((k << 16) | k);
}

Valuation Instance::to_valuation() const {
  Valuation v;
  for (const auto& [name, set] : sigs_) {
    auto& out = v.sigSets[name];
    for (auto k : set.keys()) out.insert(atoms_[k]);
  }
  for (const auto& [name, set] : fields_) {
    auto& out = v.relTuples[name];
    for (auto k : set.keys()) {
      std::vector<std::string> t;
      for (AtomIndex a : set.tuple(k)) t.push_back(atoms_[a]);
      out.insert(std::move(t));
    }
  }
  return v;
}

}  // namespace crucible
