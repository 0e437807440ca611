#pragma once

#include <string>
#include <vector>

#include "crucible/instance.hpp"

namespace crucible {

struct ModelSchema;

enum class ConstraintKind { Structural, Fact, Predicate };
std::string_view to_string(ConstraintKind kind) noexcept;

/// Outcome of checking one constraint. `rule` names the kind of structural
/// constraint (sigLowerBound, fieldTyping, ...) or is empty for facts and
/// predicates.
struct Diagnostic {
  ConstraintKind kind = ConstraintKind::Structural;
  std::string rule;
  std::string subject;
  bool holds = true;
  std::string detail;
};

/// Implicit constraints of the model's declarations: sig multiplicities,
/// hierarchy disjointness and containment, field typing, field multiplicities
/// per owner atom and declared arrow multiplicities of higher-arity fields.
std::vector<Diagnostic> check_structural(const Instance& instance, const ModelSchema& schema);

/// One diagnostic per fact paragraph.
std::vector<Diagnostic> check_facts(const Instance& instance, const ModelSchema& schema);

}  // namespace crucible
