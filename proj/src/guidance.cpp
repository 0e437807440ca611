#include "crucible/guidance.hpp"

#include <algorithm>

#include "crucible/schema.hpp"
#include "crucible/structural.hpp"

namespace crucible {

namespace {

std::string describe_field(const FieldDecl& f) {
  std::string out = f.name + " : ";
  if (f.arity() == 2) return out + std::string(keyword(f.multiplicity)) + " " + f.columns[0];
  for (std::size_t i = 0; i < f.columns.size(); ++i) out += (i ? " -> " : "") + f.columns[i];
  return out;
}

bool is_capped(SigMultiplicity m) { return m == SigMultiplicity::One || m == SigMultiplicity::Lone; }

}  // namespace

GuidanceVerdict validate_atom_addition(const TestCase& test, const ModelSchema& schema, const std::string& sig) {
  const SigDecl& decl = schema.sig(sig);
  if (decl.kind == SigKind::Subset)
    return GuidanceVerdict::block("subsetSig",
                                  sig + " is a subset signature; mark an existing atom as " + sig + " instead",
                                  sig);
  if (decl.isAbstract && schema.has_children(sig))
    return GuidanceVerdict::block("abstract", "abstract sig " + sig + " cannot hold atoms directly", sig);
  std::vector<std::string> chain{sig};
  for (const auto& a : schema.ancestors_of(sig)) chain.push_back(a);
  for (const auto& name : chain) {
    const SigDecl& s = schema.sig(name);
    if (!is_capped(s.multiplicity)) continue;
    bool present = std::any_of(test.atoms.begin(), test.atoms.end(),
                               [&](const Atom& a) { return is_subtype(schema, a.sig, name); });
    if (present)
      return GuidanceVerdict::block("sigUpperBound",
                                    std::string(keyword(s.multiplicity)) + " sig " + name +
                                        " allows at most one atom",
                                    name);
  }
  return GuidanceVerdict::allow();
}

GuidanceVerdict validate_connection_addition(const TestCase& test, const ModelSchema& schema,
                                             const std::string& relation,
                                             const std::vector<std::string>& atomIds) {
  const FieldDecl& f = schema.field(relation);
  if (static_cast<int>(atomIds.size()) != f.arity())
    throw Error(ErrorCode::ArityMismatch, relation + " has arity " + std::to_string(f.arity()) + " but " +
                                              std::to_string(atomIds.size()) + " atom(s) were given");
  for (std::size_t i = 0; i < atomIds.size(); ++i) {
    const Atom& a = test.atom(atomIds[i]);
    if (!is_member(schema, a, f.column(i)))
      return GuidanceVerdict::block("typing",
                                    describe_field(f) + ": column " + std::to_string(i + 1) + " must be a " +
                                        f.column(i) + ", not " + a.nickname,
                                    relation);
  }
  for (const auto& c : test.connections)
    if (c.relation == relation && c.atomIds == atomIds)
      return GuidanceVerdict::block("duplicate", "this " + relation + " connection already exists", relation);
  if (f.arity() == 2 && (f.multiplicity == FieldMultiplicity::Lone || f.multiplicity == FieldMultiplicity::One)) {
    bool taken = std::any_of(test.connections.begin(), test.connections.end(), [&](const Connection& c) {
      return c.relation == relation && c.atomIds[0] == atomIds[0];
    });
    if (taken)
      return GuidanceVerdict::block("relUpperBound",
                                    describe_field(f) + ": " + test.atom(atomIds[0]).nickname +
                                        " already has a " + relation + " connection",
                                    relation);
  }
  return GuidanceVerdict::allow();
}

std::vector<std::string> valid_connection_targets(const TestCase& test, const ModelSchema& schema,
                                                  const std::string& relation,
                                                  const std::vector<std::string>& prefix) {
  const FieldDecl& f = schema.field(relation);
  if (static_cast<int>(prefix.size()) >= f.arity())
    throw Error(ErrorCode::BadPrefix, "prefix already covers every column of " + relation);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const Atom* a = test.find_atom(prefix[i]);
    if (!a) throw Error(ErrorCode::BadPrefix, "unknown atom '" + prefix[i] + "' in prefix");
    if (!is_member(schema, *a, f.column(i)))
      throw Error(ErrorCode::BadPrefix, a->nickname + " cannot fill column " + std::to_string(i + 1) + " of " +
                                            relation);
  }
  const std::string& column = f.column(prefix.size());
  const bool completes = static_cast<int>(prefix.size()) + 1 == f.arity();
  std::vector<std::string> out;
  for (const auto& a : test.atoms) {
    if (!is_member(schema, a, column)) continue;
    if (completes && f.arity() == 2) {
      std::vector<std::string> tuple = prefix;
      tuple.push_back(a.id);
      if (!validate_connection_addition(test, schema, relation, tuple).allowed()) continue;
    }
    out.push_back(a.id);
  }
  return out;
}

PreRunReport pre_run_check(const TestCase& test, const ModelSchema& schema) {
  Instance inst = Instance::from_valuation(derive_valuation(test, schema), schema);
  PreRunReport report;
  for (const auto& d : check_structural(inst, schema)) {
    if (d.holds) continue;
    std::string kind = "typing";
    if (d.rule == "sigLowerBound" || d.rule == "fieldLowerBound") kind = "lowerBound";
    else if (d.rule == "sigUpperBound" || d.rule == "fieldUpperBound") kind = "upperBound";
    else if (d.rule == "arrowMultiplicity") kind = "higherArityMult";
    report.violations.push_back({std::move(kind), d.subject, d.detail});
  }
  return report;
}

}  // namespace crucible
