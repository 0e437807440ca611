#pragma once

#include <string>

#include "crucible/ast.hpp"

namespace crucible {

// Fully parenthesized rendering. Re-parsing the output yields a structurally
// equal tree; it is not meant to look like hand-written Alloy.
std::string print(const Expr& e);
std::string print(const Formula& f);

}  // namespace crucible
