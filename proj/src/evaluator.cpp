#include "crucible/evaluator.hpp"

#include "crucible/schema.hpp"

namespace crucible {

namespace {

struct QuantVar {
  const std::string* name;
  const Expr* domain;
  int group;  // index of the declaration group; -1 when not disjoint
};

class Quantification {
 public:
  Quantification(const Formula& f, Env& env) : f_(f), env_(env) {
    for (std::size_t g = 0; g < f.decls.size(); ++g)
      for (const auto& n : f.decls[g].names)
        vars_.push_back({&n, f.decls[g].domain.get(), f.decls[g].disjoint ? static_cast<int>(g) : -1});
    chosen_.resize(vars_.size());
  }

  bool run() {
    assign(0);
    switch (f_.quantifier) {
      case Quantifier::All: return !failed_;
      case Quantifier::Some: return count_ > 0;
      case Quantifier::No: return count_ == 0;
      case Quantifier::Lone: return count_ <= 1;
      case Quantifier::One: return count_ == 1;
    }
    return false;
  }

 private:
  bool done() const {
    switch (f_.quantifier) {
      case Quantifier::All: return failed_;
      case Quantifier::Some:
      case Quantifier::No: return count_ > 0;
      case Quantifier::Lone:
      case Quantifier::One: return count_ > 1;
    }
    return false;
  }

  void assign(std::size_t i) {
    if (i == vars_.size()) {
      bool holds = eval_formula(*f_.first, env_);
      if (holds) ++count_;
      else failed_ = true;
      return;
    }
    const TupleSet domain = eval_expr(*vars_[i].domain, env_);
    for (std::uint64_t atom : domain.keys()) {
      if (vars_[i].group >= 0 && clashes(i, atom)) continue;
      chosen_[i] = atom;
      env_.bind(*vars_[i].name, TupleSet::singleton(static_cast<AtomIndex>(atom)));
      assign(i + 1);
      env_.unbind();
      if (done()) return;
    }
  }

  bool clashes(std::size_t i, std::uint64_t atom) const {
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j].group == vars_[i].group && chosen_[j] == atom) return true;
    return false;
  }

  const Formula& f_;
  Env& env_;
  std::vector<QuantVar> vars_;
  std::vector<std::uint64_t> chosen_;
  std::size_t count_ = 0;
  bool failed_ = false;
};

}  // namespace

const TupleSet* Env::lookup(const std::string& name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

TupleSet eval_expr(const Expr& e, Env& env) {
  switch (e.kind) {
    case ExprKind::Name:
    case ExprKind::VarRef:
      if (const TupleSet* bound = env.lookup(e.name)) return *bound;
      if (e.kind == ExprKind::VarRef) return TupleSet(1);
      if (env.schema().find_sig(e.name)) return env.instance().sig(e.name);
      return env.instance().field(e.name);
    case ExprKind::SigRef: return env.instance().sig(e.name);
    case ExprKind::FieldRef: return env.instance().field(e.name);
    case ExprKind::Univ: return env.instance().universe();
    case ExprKind::Iden: return env.instance().iden();
    case ExprKind::None: return TupleSet(1);
    case ExprKind::Transpose: return eval_expr(*e.lhs, env).transpose();
    case ExprKind::Closure: return eval_expr(*e.lhs, env).closure();
    case ExprKind::ReflexiveClosure:
      return eval_expr(*e.lhs, env).closure().unite(env.instance().iden());
    case ExprKind::Join: return eval_expr(*e.lhs, env).join(eval_expr(*e.rhs, env));
    case ExprKind::Product: return eval_expr(*e.lhs, env).product(eval_expr(*e.rhs, env));
    case ExprKind::Union: return eval_expr(*e.lhs, env).unite(eval_expr(*e.rhs, env));
    case ExprKind::Difference: return eval_expr(*e.lhs, env).minus(eval_expr(*e.rhs, env));
    case ExprKind::Intersection: return eval_expr(*e.lhs, env).intersect(eval_expr(*e.rhs, env));
  }
  return TupleSet(1);
}

bool eval_formula(const Formula& f, Env& env) {
  switch (f.kind) {
    case FormulaKind::Subset: return eval_expr(*f.left, env).subset_of(eval_expr(*f.right, env));
    case FormulaKind::Equal: return eval_expr(*f.left, env).keys() == eval_expr(*f.right, env).keys();
    case FormulaKind::NotEqual: return eval_expr(*f.left, env).keys() != eval_expr(*f.right, env).keys();
    case FormulaKind::Mult: {
      std::size_t n = eval_expr(*f.left, env).size();
      switch (f.mult) {
        case Multiplicity::No: return n == 0;
        case Multiplicity::Some: return n >= 1;
        case Multiplicity::Lone: return n <= 1;
        case Multiplicity::One: return n == 1;
      }
      return false;
    }
    case FormulaKind::Quantified: return Quantification(f, env).run();
    case FormulaKind::Not: return !eval_formula(*f.first, env);
    case FormulaKind::And: return eval_formula(*f.first, env) && eval_formula(*f.second, env);
    case FormulaKind::Or: return eval_formula(*f.first, env) || eval_formula(*f.second, env);
    case FormulaKind::Implies:
      if (eval_formula(*f.first, env)) return eval_formula(*f.second, env);
      return f.third ? eval_formula(*f.third, env) : true;
    case FormulaKind::Iff: return eval_formula(*f.first, env) == eval_formula(*f.second, env);
    case FormulaKind::PredCall: {
      std::vector<TupleSet> args;
      args.reserve(f.args.size());
      for (const auto& a : f.args) args.push_back(eval_expr(*a, env));
      return eval_pred(env.schema(), f.name, args, env.instance());
    }
    case FormulaKind::Block:
      for (const auto& c : f.children)
        if (!eval_formula(*c, env)) return false;
      return true;
  }
  return false;
}

bool eval_pred(const ModelSchema& schema, const std::string& pred, const std::vector<TupleSet>& args,
               const Instance& instance) {
  const PredDecl* decl = schema.find_pred(pred);
  if (!decl) throw Error(ErrorCode::UnknownPred, "unknown predicate '" + pred + "'");
  if (decl->params.size() != args.size())
    throw Error(ErrorCode::BadArgs, "'" + pred + "' expects " + std::to_string(decl->params.size()) +
                                        " argument(s)");
  Env inner(instance, schema);
  for (std::size_t i = 0; i < args.size(); ++i) inner.bind(decl->params[i].name, args[i]);
  return eval_formula(*decl->body, inner);
}

}  // namespace crucible
