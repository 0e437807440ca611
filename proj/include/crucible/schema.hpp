#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crucible/ast.hpp"

namespace crucible {

enum class SigKind { Top, Extends, Subset };

struct SigDecl {
  std::string name;
  SigMultiplicity multiplicity = SigMultiplicity::Any;
  bool isAbstract = false;
  SigKind kind = SigKind::Top;
  std::string parent;               // SigKind::Extends
  std::vector<std::string> subsetOf;  // SigKind::Subset
  std::vector<std::string> fields;
  std::size_t declIndex = 0;
  Span span;
};

struct FieldDecl {
  std::string name;
  std::string owner;
  std::vector<std::string> columns;  // excludes the owner, which is column 0
  /// Binary fields: the declared (or defaulted `one`) multiplicity.
  FieldMultiplicity multiplicity = FieldMultiplicity::One;
  /// Arity >= 3: one entry per arrow; empty when no arrow carries a keyword.
  std::vector<ArrowMult> arrowMults;
  std::size_t declIndex = 0;
  Span span;

  int arity() const { return static_cast<int>(columns.size()) + 1; }
  /// Column i of the full relation type, owner included.
  const std::string& column(std::size_t i) const { return i == 0 ? owner : columns[i - 1]; }
};

struct PredDecl {
  std::string name;
  std::vector<Param> params;
  FormulaPtr body;
  bool isAssert = false;
  std::size_t declIndex = 0;
  Span span;
};

struct FactDecl {
  std::string name;
  FormulaPtr body;
  std::size_t declIndex = 0;
};

/// Resolved view of a model. Every list is in declaration order.
struct ModelSchema {
  std::vector<SigDecl> sigs;
  std::vector<FieldDecl> fields;
  std::vector<PredDecl> preds;
  std::vector<FactDecl> facts;

  const SigDecl* find_sig(std::string_view name) const;
  const FieldDecl* find_field(std::string_view name) const;
  const PredDecl* find_pred(std::string_view name) const;

  const SigDecl& sig(std::string_view name) const;  // throws UnknownSig
  const FieldDecl& field(std::string_view name) const;  // throws UnknownRelation

  /// Sigs that directly extend `name`, in declaration order.
  std::vector<std::string> children_of(std::string_view name) const;
  bool has_children(std::string_view name) const;
  /// Extends-ancestors of `name`, nearest first; excludes `name` itself.
  std::vector<std::string> ancestors_of(std::string_view name) const;
  /// The top-level sig reached by following `extends` edges.
  std::string top_level_of(std::string_view name) const;
};

/// Resolves names, applies the binary default multiplicity and checks arities.
/// Throws UnknownName, DuplicateName, CyclicHierarchy, InvalidHierarchy,
/// ArityError, RecursiveCall or UnsupportedFeature.
ModelSchema resolve(const SourceModel& source);

/// Convenience: parse_model followed by resolve.
ModelSchema load_schema(std::string_view text);

/// True iff `sub` reaches `sup` over zero or more extends/in edges.
/// Throws Error(UnknownName) for undeclared sigs.
bool is_subtype(const ModelSchema& schema, std::string_view sub, std::string_view sup);

/// Sigs that can own atoms directly: neither subset sigs nor abstract sigs
/// with children.
std::vector<std::string> concrete_sigs(const ModelSchema& schema);

/// Resolves a formula against the schema with the given unary variables in
/// scope. Used for predicate bodies and for reading back command strings.
FormulaPtr resolve_formula(const ModelSchema& schema, const FormulaPtr& formula,
                           const std::vector<std::string>& variables = {});

}  // namespace crucible
