#pragma once

#include <string_view>

#include "crucible/ast.hpp"

namespace crucible {

struct ModelSchema;

/// Parses a model written in the supported Alloy subset. Names are left
/// unresolved (ExprKind::Name); see resolve() in schema.hpp.
///
/// Throws Error with SyntaxError for malformed input and UnsupportedFeature for
/// Alloy constructs outside the subset (`open`, `fun`, integers, ...).
SourceModel parse_model(std::string_view text);

/// Parses a standalone formula sequence without resolving names. Several
/// juxtaposed formulas are returned as a single Block.
FormulaPtr parse_formula_text(std::string_view text);

/// Parses a formula sequence and resolves it against `schema`. This is how
/// generated command strings are read back.
/// Throws SyntaxError, UnknownName or ArityError.
FormulaPtr parse_formula_block(std::string_view text, const ModelSchema& schema);

}  // namespace crucible
