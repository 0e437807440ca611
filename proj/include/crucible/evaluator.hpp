#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crucible/ast.hpp"
#include "crucible/instance.hpp"

namespace crucible {

struct ModelSchema;

/// Evaluation context: an instance plus variable bindings. Later bindings
/// shadow earlier ones with the same name.
class Env {
 public:
  Env(const Instance& instance, const ModelSchema& schema) : instance_(&instance), schema_(&schema) {}

  const Instance& instance() const { return *instance_; }
  const ModelSchema& schema() const { return *schema_; }

  void bind(std::string name, TupleSet value) { bindings_.emplace_back(std::move(name), std::move(value)); }
  void unbind(std::size_t count = 1) { bindings_.resize(bindings_.size() - count); }
  const TupleSet* lookup(const std::string& name) const;

 private:
  const Instance* instance_;
  const ModelSchema* schema_;
  std::vector<std::pair<std::string, TupleSet>> bindings_;
};

/// Both functions expect resolved input (see resolve_formula).
TupleSet eval_expr(const Expr& expr, Env& env);
bool eval_formula(const Formula& formula, Env& env);

/// Evaluates a predicate body with its parameters bound to the given atoms.
bool eval_pred(const ModelSchema& schema, const std::string& pred, const std::vector<TupleSet>& args,
               const Instance& instance);

}  // namespace crucible
