#include "crucible/ast.hpp"

namespace crucible {

ExprPtr make_ref(ExprKind kind, std::string name, Span span, int arity) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->name = std::move(name);
  e->span = span;
  e->arity = arity;
  return e;
}

ExprPtr make_constant(ExprKind kind, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->span = span;
  return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr operand, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(operand);
  e->span = span;
  return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->span = span;
  return e;
}

bool is_unary(ExprKind kind) noexcept {
  return kind == ExprKind::Transpose || kind == ExprKind::Closure ||
         kind == ExprKind::ReflexiveClosure;
}

bool is_binary(ExprKind kind) noexcept {
  switch (kind) {
    case ExprKind::Join:
    case ExprKind::Product:
    case ExprKind::Union:
    case ExprKind::Difference:
    case ExprKind::Intersection:
      return true;
    default:
      return false;
  }
}

std::string_view keyword(Multiplicity m) noexcept {
  switch (m) {
    case Multiplicity::No: return "no";
    case Multiplicity::Some: return "some";
    case Multiplicity::Lone: return "lone";
    case Multiplicity::One: return "one";
  }
  return "";
}

std::string_view keyword(Quantifier q) noexcept {
  switch (q) {
    case Quantifier::All: return "all";
    case Quantifier::Some: return "some";
    case Quantifier::No: return "no";
    case Quantifier::Lone: return "lone";
    case Quantifier::One: return "one";
  }
  return "";
}

std::string_view keyword(SigMultiplicity m) noexcept {
  switch (m) {
    case SigMultiplicity::Any: return "";
    case SigMultiplicity::One: return "one";
    case SigMultiplicity::Lone: return "lone";
    case SigMultiplicity::Some: return "some";
  }
  return "";
}

std::string_view keyword(FieldMultiplicity m) noexcept {
  switch (m) {
    case FieldMultiplicity::Set: return "set";
    case FieldMultiplicity::Some: return "some";
    case FieldMultiplicity::Lone: return "lone";
    case FieldMultiplicity::One: return "one";
  }
  return "";
}

namespace {

std::shared_ptr<Formula> new_formula(FormulaKind kind, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->span = span;
  return f;
}

bool is_name_like(ExprKind k) {
  return k == ExprKind::Name || k == ExprKind::SigRef || k == ExprKind::FieldRef ||
         k == ExprKind::VarRef;
}

bool equal_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool equal_ptr(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

}  // namespace

FormulaPtr make_compare(FormulaKind kind, ExprPtr lhs, ExprPtr rhs, Span span) {
  auto f = new_formula(kind, span);
  f->left = std::move(lhs);
  f->right = std::move(rhs);
  return f;
}

FormulaPtr make_mult(Multiplicity mult, ExprPtr operand, Span span) {
  auto f = new_formula(FormulaKind::Mult, span);
  f->mult = mult;
  f->left = std::move(operand);
  return f;
}

FormulaPtr make_quantified(Quantifier q, std::vector<QuantDecl> decls, FormulaPtr body, Span span) {
  auto f = new_formula(FormulaKind::Quantified, span);
  f->quantifier = q;
  f->decls = std::move(decls);
  f->first = std::move(body);
  return f;
}

FormulaPtr make_not(FormulaPtr operand, Span span) {
  auto f = new_formula(FormulaKind::Not, span);
  f->first = std::move(operand);
  return f;
}

FormulaPtr make_connective(FormulaKind kind, FormulaPtr lhs, FormulaPtr rhs, Span span,
                           FormulaPtr elseBranch) {
  auto f = new_formula(kind, span);
  f->first = std::move(lhs);
  f->second = std::move(rhs);
  f->third = std::move(elseBranch);
  return f;
}

FormulaPtr make_pred_call(std::string name, std::vector<ExprPtr> args, Span span) {
  auto f = new_formula(FormulaKind::PredCall, span);
  f->name = std::move(name);
  f->args = std::move(args);
  return f;
}

FormulaPtr make_block(std::vector<FormulaPtr> children, Span span) {
  auto f = new_formula(FormulaKind::Block, span);
  f->children = std::move(children);
  return f;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (is_name_like(a.kind) && is_name_like(b.kind)) return a.name == b.name;
  if (a.kind != b.kind) return false;
  return equal_ptr(a.lhs, b.lhs) && equal_ptr(a.rhs, b.rhs);
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Subset:
    case FormulaKind::Equal:
    case FormulaKind::NotEqual:
      return equal_ptr(a.left, b.left) && equal_ptr(a.right, b.right);
    case FormulaKind::Mult:
      return a.mult == b.mult && equal_ptr(a.left, b.left);
    case FormulaKind::Quantified: {
      if (a.quantifier != b.quantifier || a.decls.size() != b.decls.size()) return false;
      for (std::size_t i = 0; i < a.decls.size(); ++i) {
        const auto& da = a.decls[i];
        const auto& db = b.decls[i];
        if (da.disjoint != db.disjoint || da.names != db.names || !equal_ptr(da.domain, db.domain))
          return false;
      }
      return equal_ptr(a.first, b.first);
    }
    case FormulaKind::Not:
      return equal_ptr(a.first, b.first);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff:
    case FormulaKind::Implies:
      return equal_ptr(a.first, b.first) && equal_ptr(a.second, b.second) &&
             equal_ptr(a.third, b.third);
    case FormulaKind::PredCall: {
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal_ptr(a.args[i], b.args[i])) return false;
      return true;
    }
    case FormulaKind::Block: {
      if (a.children.size() != b.children.size()) return false;
      for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!equal_ptr(a.children[i], b.children[i])) return false;
      return true;
    }
  }
  return false;
}

const Span& span_of(const Declaration& decl) {
  return std::visit([](const auto& d) -> const Span& { return d.span; }, decl);
}

}  // namespace crucible
