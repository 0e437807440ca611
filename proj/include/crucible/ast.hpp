#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crucible/error.hpp"

namespace crucible {

// ---------------------------------------------------------------------------
// Relational expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
  Name,  // unresolved identifier, as produced by parse_model
  SigRef,
  FieldRef,
  VarRef,
  Univ,
  Iden,
  None,
  Transpose,
  Closure,
  ReflexiveClosure,
  Join,
  Product,
  Union,
  Difference,
  Intersection,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. Unary operators keep their operand in `lhs`.
/// `arity` is 0 until the expression has been resolved against a schema.
struct Expr {
  ExprKind kind = ExprKind::None;
  std::string name;
  ExprPtr lhs;
  ExprPtr rhs;
  Span span;
  int arity = 0;
};

ExprPtr make_ref(ExprKind kind, std::string name, Span span, int arity = 0);
ExprPtr make_constant(ExprKind kind, Span span);
ExprPtr make_unary(ExprKind kind, ExprPtr operand, Span span);
ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, Span span);

bool is_unary(ExprKind kind) noexcept;
bool is_binary(ExprKind kind) noexcept;

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class Multiplicity { No, Some, Lone, One };
enum class Quantifier { All, Some, No, Lone, One };

std::string_view keyword(Multiplicity m) noexcept;
std::string_view keyword(Quantifier q) noexcept;

/// One declaration group of a quantifier: `disj a, b : domain`.
struct QuantDecl {
  bool disjoint = false;
  std::vector<std::string> names;
  ExprPtr domain;
  Span span;
};

enum class FormulaKind {
  Subset,
  Equal,
  NotEqual,
  Mult,
  Quantified,
  Not,
  And,
  Or,
  Implies,
  Iff,
  PredCall,
  Block,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::Block;
  // Subset / Equal / NotEqual use both; Mult uses left.
  ExprPtr left;
  ExprPtr right;
  Multiplicity mult = Multiplicity::Some;
  Quantifier quantifier = Quantifier::All;
  std::vector<QuantDecl> decls;
  // Not and Quantified keep their operand in `first`; binary connectives use
  // `first`/`second`; `third` is the optional else-branch of Implies.
  FormulaPtr first;
  FormulaPtr second;
  FormulaPtr third;
  std::vector<FormulaPtr> children;  // Block
  std::string name;                  // PredCall
  std::vector<ExprPtr> args;         // PredCall
  Span span;
};

FormulaPtr make_compare(FormulaKind kind, ExprPtr lhs, ExprPtr rhs, Span span);
FormulaPtr make_mult(Multiplicity mult, ExprPtr operand, Span span);
FormulaPtr make_quantified(Quantifier q, std::vector<QuantDecl> decls, FormulaPtr body, Span span);
FormulaPtr make_not(FormulaPtr operand, Span span);
FormulaPtr make_connective(FormulaKind kind, FormulaPtr lhs, FormulaPtr rhs, Span span,
                           FormulaPtr elseBranch = nullptr);
FormulaPtr make_pred_call(std::string name, std::vector<ExprPtr> args, Span span);
FormulaPtr make_block(std::vector<FormulaPtr> children, Span span);

/// Structural equality that ignores spans and resolution state (a Name and a
/// SigRef with the same identifier compare equal).
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Formula& a, const Formula& b);

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

enum class SigMultiplicity { Any, One, Lone, Some };
enum class FieldMultiplicity { Set, Some, Lone, One };

std::string_view keyword(SigMultiplicity m) noexcept;
std::string_view keyword(FieldMultiplicity m) noexcept;

/// Multiplicities written around one `->` of a field type.
struct ArrowMult {
  FieldMultiplicity left = FieldMultiplicity::Set;
  FieldMultiplicity right = FieldMultiplicity::Set;

  friend bool operator==(const ArrowMult&, const ArrowMult&) = default;
};

struct FieldDeclaration {
  std::string name;
  std::vector<std::string> columns;  // excludes the owning sig
  std::vector<Span> columnSpans;
  std::optional<FieldMultiplicity> multiplicity;  // leading keyword, if written
  std::vector<ArrowMult> arrows;                  // one per `->`
  Span span;
};

struct SigDeclaration {
  std::vector<std::string> names;
  bool isAbstract = false;
  SigMultiplicity multiplicity = SigMultiplicity::Any;
  std::optional<std::string> extendsParent;
  std::vector<std::string> inParents;
  std::vector<FieldDeclaration> fields;
  Span span;
};

struct Param {
  std::string name;
  std::string sig;
  Span span;
};

/// A `pred` or an `assert` paragraph; asserts never have parameters.
struct PredDeclaration {
  std::string name;
  std::vector<Param> params;
  FormulaPtr body;
  bool isAssert = false;
  Span span;
};

struct FactDeclaration {
  std::string name;  // empty for anonymous facts
  FormulaPtr body;
  Span span;
};

enum class CommandKind { Run, Check };

/// `run`/`check` commands are kept for completeness and otherwise ignored.
struct CommandDeclaration {
  CommandKind kind = CommandKind::Run;
  std::string target;
  FormulaPtr body;
  std::optional<int> scope;
  Span span;
};

using Declaration =
    std::variant<SigDeclaration, PredDeclaration, FactDeclaration, CommandDeclaration>;

const Span& span_of(const Declaration& decl);

struct SourceModel {
  std::string text;
  std::vector<Declaration> declarations;
};

}  // namespace crucible
