#include "crucible/schema.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "crucible/parser.hpp"

namespace crucible {

namespace {

constexpr int kMaxArity = 4;

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? nullptr : &*it;
}

class FormulaResolver {
 public:
  explicit FormulaResolver(const ModelSchema& schema) : schema_(schema) {}

  void push(const std::string& name) { scope_.push_back(name); }
  void pop(std::size_t n) { scope_.resize(scope_.size() - n); }

  ExprPtr expr(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::Name:
      case ExprKind::SigRef:
      case ExprKind::FieldRef:
      case ExprKind::VarRef:
        return name(*e);
      case ExprKind::Univ:
        return make_ref(ExprKind::Univ, "", e->span, 1);
      case ExprKind::Iden:
        return make_ref(ExprKind::Iden, "", e->span, 2);
      case ExprKind::None:
        return make_ref(ExprKind::None, "", e->span, 1);
      case ExprKind::Transpose:
      case ExprKind::Closure:
      case ExprKind::ReflexiveClosure: {
        ExprPtr operand = expr(e->lhs);
        if (operand->arity != 2)
          throw Error(ErrorCode::ArityError,
                      "operand of " + std::string(e->kind == ExprKind::Transpose ? "~" : "closure") +
                          " must be binary, found arity " + std::to_string(operand->arity),
                      e->span);
        return with_arity(make_unary(e->kind, operand, e->span), 2);
      }
      case ExprKind::Join: {
        ExprPtr l = expr(e->lhs);
        ExprPtr r = expr(e->rhs);
        int arity = l->arity + r->arity - 2;
        if (arity < 1)
          throw Error(ErrorCode::ArityError,
                      "join of two unary expressions has arity 0", e->span);
        return with_arity(make_binary(e->kind, l, r, e->span), arity);
      }
      case ExprKind::Product: {
        ExprPtr l = expr(e->lhs);
        ExprPtr r = expr(e->rhs);
        int arity = l->arity + r->arity;
        if (arity > kMaxArity)
          throw Error(ErrorCode::ArityError,
                      "product arity " + std::to_string(arity) + " exceeds the supported maximum of " +
                          std::to_string(kMaxArity),
                      e->span);
        return with_arity(make_binary(e->kind, l, r, e->span), arity);
      }
      case ExprKind::Union:
      case ExprKind::Difference:
      case ExprKind::Intersection: {
        ExprPtr l = expr(e->lhs);
        ExprPtr r = expr(e->rhs);
        if (l->arity != r->arity)
          throw Error(ErrorCode::ArityError,
                      "operands have different arities (" + std::to_string(l->arity) + " and " +
                          std::to_string(r->arity) + ")",
                      e->span);
        return with_arity(make_binary(e->kind, l, r, e->span), l->arity);
      }
    }
    throw Error(ErrorCode::SyntaxError, "unknown expression", e->span);
  }

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::Subset:
      case FormulaKind::Equal:
      case FormulaKind::NotEqual: {
        ExprPtr l = expr(f->left);
        ExprPtr r = expr(f->right);
        if (l->arity != r->arity)
          throw Error(ErrorCode::ArityError,
                      "compared expressions have different arities (" + std::to_string(l->arity) +
                          " and " + std::to_string(r->arity) + ")",
                      f->span);
        return make_compare(f->kind, l, r, f->span);
      }
      case FormulaKind::Mult:
        return make_mult(f->mult, expr(f->left), f->span);
      case FormulaKind::Quantified: {
        std::vector<QuantDecl> decls;
        std::size_t pushed = 0;
        for (const auto& d : f->decls) {
          QuantDecl r = d;
          r.domain = expr(d.domain);
          if (r.domain->arity != 1)
            throw Error(ErrorCode::ArityError, "quantifier domain must be unary", d.domain->span);
          for (const auto& n : d.names) push(n);
          pushed += d.names.size();
          decls.push_back(std::move(r));
        }
        FormulaPtr body = formula(f->first);
        pop(pushed);
        return make_quantified(f->quantifier, std::move(decls), body, f->span);
      }
      case FormulaKind::Not:
        return make_not(formula(f->first), f->span);
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
        return make_connective(f->kind, formula(f->first), formula(f->second), f->span,
                               f->third ? formula(f->third) : nullptr);
      case FormulaKind::PredCall:
        return call(*f);
      case FormulaKind::Block: {
        std::vector<FormulaPtr> children;
        children.reserve(f->children.size());
        for (const auto& c : f->children) children.push_back(formula(c));
        return make_block(std::move(children), f->span);
      }
    }
    throw Error(ErrorCode::SyntaxError, "unknown formula", f->span);
  }

 private:
  static ExprPtr with_arity(ExprPtr e, int arity) {
    auto copy = std::make_shared<Expr>(*e);
    copy->arity = arity;
    return copy;
  }

  bool in_scope(const std::string& n) const {
    return std::find(scope_.rbegin(), scope_.rend(), n) != scope_.rend();
  }

  ExprPtr name(const Expr& e) {
    if (in_scope(e.name)) return make_ref(ExprKind::VarRef, e.name, e.span, 1);
    if (schema_.find_sig(e.name)) return make_ref(ExprKind::SigRef, e.name, e.span, 1);
    if (const auto* fd = schema_.find_field(e.name))
      return make_ref(ExprKind::FieldRef, e.name, e.span, fd->arity());
    if (schema_.find_pred(e.name))
      throw Error(ErrorCode::SyntaxError, "predicate '" + e.name + "' used as an expression", e.span);
    throw Error(ErrorCode::UnknownName, "unknown name '" + e.name + "'", e.span);
  }

  FormulaPtr call(const Formula& f) {
    if (in_scope(f.name) || schema_.find_sig(f.name) || schema_.find_field(f.name))
      throw Error(ErrorCode::SyntaxError, "expected a formula but '" + f.name + "' is an expression",
                  f.span);
    const PredDecl* pred = schema_.find_pred(f.name);
    if (!pred) throw Error(ErrorCode::UnknownName, "unknown predicate '" + f.name + "'", f.span);
    if (pred->params.size() != f.args.size())
      throw Error(ErrorCode::ArityError,
                  "'" + f.name + "' expects " + std::to_string(pred->params.size()) +
                      " argument(s) but got " + std::to_string(f.args.size()),
                  f.span);
    std::vector<ExprPtr> args;
    for (const auto& a : f.args) {
      ExprPtr r = expr(a);
      if (r->arity != 1) throw Error(ErrorCode::ArityError, "predicate arguments must be unary", a->span);
      args.push_back(r);
    }
    return make_pred_call(f.name, std::move(args), f.span);
  }

  const ModelSchema& schema_;
  std::vector<std::string> scope_;
};

void collect_calls(const Formula& f, std::set<std::string>& out) {
  if (f.kind == FormulaKind::PredCall) out.insert(f.name);
  for (const auto* sub : {&f.first, &f.second, &f.third})
    if (*sub) collect_calls(**sub, out);
  for (const auto& c : f.children) collect_calls(*c, out);
}

void check_hierarchy(const ModelSchema& s, const std::map<std::string, Span>& spans) {
  for (const auto& sig : s.sigs) {
    if (sig.kind == SigKind::Extends) {
      const SigDecl* parent = s.find_sig(sig.parent);
      if (!parent)
        throw Error(ErrorCode::UnknownName, "unknown parent signature '" + sig.parent + "'", sig.span);
      if (parent->kind == SigKind::Subset)
        throw Error(ErrorCode::InvalidHierarchy,
                    "'" + sig.name + "' cannot extend subset signature '" + sig.parent + "'", sig.span);
    }
    for (const auto& p : sig.subsetOf)
      if (!s.find_sig(p))
        throw Error(ErrorCode::UnknownName, "unknown parent signature '" + p + "'", sig.span);
  }
  // Cycle detection over extends and in edges.
  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::function<void(const SigDecl&)> visit = [&](const SigDecl& sig) {
    int& st = state[sig.name];
    if (st == 2) return;
    if (st == 1)
      throw Error(ErrorCode::CyclicHierarchy, "signature hierarchy cycle through '" + sig.name + "'",
                  spans.at(sig.name));
    st = 1;
    if (sig.kind == SigKind::Extends) visit(*s.find_sig(sig.parent));
    for (const auto& p : sig.subsetOf) visit(*s.find_sig(p));
    state[sig.name] = 2;
  };
  for (const auto& sig : s.sigs) visit(sig);
}

}  // namespace

const SigDecl* ModelSchema::find_sig(std::string_view name) const { return find_named(sigs, name); }
const FieldDecl* ModelSchema::find_field(std::string_view name) const {
  return find_named(fields, name);
}
const PredDecl* ModelSchema::find_pred(std::string_view name) const { return find_named(preds, name); }

const SigDecl& ModelSchema::sig(std::string_view name) const {
  if (const auto* s = find_sig(name)) return *s;
  throw Error(ErrorCode::UnknownSig, "unknown signature '" + std::string(name) + "'");
}

const FieldDecl& ModelSchema::field(std::string_view name) const {
  if (const auto* f = find_field(name)) return *f;
  throw Error(ErrorCode::UnknownRelation, "unknown relation '" + std::string(name) + "'");
}

std::vector<std::string> ModelSchema::children_of(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& s : sigs)
    if (s.kind == SigKind::Extends && s.parent == name) out.push_back(s.name);
  return out;
}

bool ModelSchema::has_children(std::string_view name) const {
  return std::any_of(sigs.begin(), sigs.end(),
                     [&](const SigDecl& s) { return s.kind == SigKind::Extends && s.parent == name; });
}

std::vector<std::string> ModelSchema::ancestors_of(std::string_view name) const {
  std::vector<std::string> out;
  const SigDecl* cur = find_sig(name);
  while (cur && cur->kind == SigKind::Extends) {
    out.push_back(cur->parent);
    cur = find_sig(cur->parent);
  }
  return out;
}

std::string ModelSchema::top_level_of(std::string_view name) const {
  auto chain = ancestors_of(name);
  return chain.empty() ? std::string(name) : chain.back();
}

ModelSchema resolve(const SourceModel& source) {
  ModelSchema schema;
  std::map<std::string, Span> spans;
  auto claim = [&](const std::string& name, const Span& span) {
    if (!spans.emplace(name, span).second)
      throw Error(ErrorCode::DuplicateName, "'" + name + "' is declared more than once", span);
  };

  std::size_t index = 0;
  std::vector<const FactDeclaration*> facts;
  std::vector<const PredDeclaration*> preds;
  for (const auto& decl : source.declarations) {
    if (const auto* sd = std::get_if<SigDeclaration>(&decl)) {
      if (!sd->inParents.empty() && !sd->fields.empty())
        throw Error(ErrorCode::UnsupportedFeature,
                    "unsupported feature: fields on subset signatures", sd->fields.front().span);
      for (const auto& name : sd->names) {
        claim(name, sd->span);
        SigDecl sig;
        sig.name = name;
        sig.multiplicity = sd->multiplicity;
        sig.isAbstract = sd->isAbstract;
        sig.span = sd->span;
        sig.declIndex = index++;
        if (sd->extendsParent) {
          sig.kind = SigKind::Extends;
          sig.parent = *sd->extendsParent;
        } else if (!sd->inParents.empty()) {
          sig.kind = SigKind::Subset;
          sig.subsetOf = sd->inParents;
        }
        for (const auto& fdecl : sd->fields) {
          claim(fdecl.name, fdecl.span);
          FieldDecl field;
          field.name = fdecl.name;
          field.owner = name;
          field.columns = fdecl.columns;
          field.span = fdecl.span;
          field.declIndex = index++;
          if (fdecl.arrows.empty()) {
            field.multiplicity = fdecl.multiplicity.value_or(FieldMultiplicity::One);
          } else {
            field.multiplicity = FieldMultiplicity::Set;
            bool annotated = std::any_of(fdecl.arrows.begin(), fdecl.arrows.end(), [](const ArrowMult& a) {
              return a.left != FieldMultiplicity::Set || a.right != FieldMultiplicity::Set;
            });
            if (annotated) field.arrowMults = fdecl.arrows;
          }
          if (field.arity() > kMaxArity)
            throw Error(ErrorCode::ArityError,
                        "field arity exceeds the supported maximum of " + std::to_string(kMaxArity),
                        fdecl.span);
          sig.fields.push_back(field.name);
          schema.fields.push_back(std::move(field));
        }
        schema.sigs.push_back(std::move(sig));
      }
    } else if (const auto* pd = std::get_if<PredDeclaration>(&decl)) {
      claim(pd->name, pd->span);
      preds.push_back(pd);
      PredDecl pred;
      pred.name = pd->name;
      pred.params = pd->params;
      pred.isAssert = pd->isAssert;
      pred.declIndex = index++;
      pred.span = pd->span;
      schema.preds.push_back(std::move(pred));
    } else if (const auto* fd = std::get_if<FactDeclaration>(&decl)) {
      facts.push_back(fd);
    }
  }

  check_hierarchy(schema, spans);

  for (const auto& sd : source.declarations) {
    const auto* sig = std::get_if<SigDeclaration>(&sd);
    if (!sig) continue;
    for (const auto& f : sig->fields)
      for (std::size_t i = 0; i < f.columns.size(); ++i)
        if (!schema.find_sig(f.columns[i]))
          throw Error(ErrorCode::UnknownName, "unknown signature '" + f.columns[i] + "'",
                      f.columnSpans[i]);
  }

  for (std::size_t i = 0; i < preds.size(); ++i) {
    auto& pred = schema.preds[i];
    std::set<std::string> seen;
    std::vector<std::string> vars;
    for (const auto& p : pred.params) {
      if (!seen.insert(p.name).second)
        throw Error(ErrorCode::DuplicateName, "parameter '" + p.name + "' declared twice", p.span);
      if (!schema.find_sig(p.sig))
        throw Error(ErrorCode::UnknownName, "unknown signature '" + p.sig + "'", p.span);
      vars.push_back(p.name);
    }
  }
  // Bodies are resolved after every predicate signature is known so that calls
  // may refer forward.
  for (std::size_t i = 0; i < preds.size(); ++i) {
    std::vector<std::string> vars;
    for (const auto& p : schema.preds[i].params) vars.push_back(p.name);
    schema.preds[i].body = resolve_formula(schema, preds[i]->body, vars);
  }
  for (const auto* fd : facts) {
    FactDecl fact;
    fact.name = fd->name;
    fact.declIndex = index++;
    fact.body = resolve_formula(schema, fd->body);
    schema.facts.push_back(std::move(fact));
  }

  // Alloy forbids recursive predicates; evaluation would not terminate.
  std::map<std::string, std::set<std::string>> calls;
  for (const auto& p : schema.preds) collect_calls(*p.body, calls[p.name]);
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    int& st = state[name];
    if (st == 2) return;
    if (st == 1)
      throw Error(ErrorCode::RecursiveCall, "recursive call through predicate '" + name + "'",
                  schema.find_pred(name)->span);
    st = 1;
    for (const auto& callee : calls[name]) visit(callee);
    state[name] = 2;
  };
  for (const auto& p : schema.preds) visit(p.name);

  return schema;
}

ModelSchema load_schema(std::string_view text) { return resolve(parse_model(text)); }

FormulaPtr resolve_formula(const ModelSchema& schema, const FormulaPtr& formula,
                           const std::vector<std::string>& variables) {
  FormulaResolver r(schema);
  for (const auto& v : variables) r.push(v);
  return r.formula(formula);
}

FormulaPtr parse_formula_block(std::string_view text, const ModelSchema& schema) {
  return resolve_formula(schema, parse_formula_text(text));
}

bool is_subtype(const ModelSchema& schema, std::string_view sub, std::string_view sup) {
  const SigDecl* from = schema.find_sig(sub);
  if (!from) throw Error(ErrorCode::UnknownName, "unknown signature '" + std::string(sub) + "'");
  if (!schema.find_sig(sup)) throw Error(ErrorCode::UnknownName, "unknown signature '" + std::string(sup) + "'");
  std::vector<const SigDecl*> stack{from};
  std::set<std::string_view> seen;
  while (!stack.empty()) {
    const SigDecl* cur = stack.back();
    stack.pop_back();
    if (cur->name == sup) return true;
    if (!seen.insert(cur->name).second) continue;
    if (cur->kind == SigKind::Extends) stack.push_back(schema.find_sig(cur->parent));
    for (const auto& p : cur->subsetOf) stack.push_back(schema.find_sig(p));
  }
  return false;
}

std::vector<std::string> concrete_sigs(const ModelSchema& schema) {
  std::vector<std::string> out;
  for (const auto& s : schema.sigs) {
    if (s.kind == SigKind::Subset) continue;
    if (s.isAbstract && schema.has_children(s.name)) continue;
    out.push_back(s.name);
  }
  return out;
}

}  // namespace crucible
