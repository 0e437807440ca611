#pragma once

#include <string>
#include <vector>

#include "crucible/testcase.hpp"

namespace crucible {

struct ModelSchema;

struct CommandString {
  std::string text;
  /// Rendered predicate literals, e.g. "acyclic" or "!inv3".
  std::vector<std::string> predicateSuffixes;
};

/// Renders a canvas as existential declarations, set equalities and predicate
/// literals. Output is deterministic for a given test and schema.
CommandString generate_command_string(const TestCase& test, const ModelSchema& schema);

/// Nicknames of the connection's atoms joined by "->".
std::string render_tuple(const Connection& connection, const TestCase& test);

/// Wraps the valuation in a `val` block and adds an `@Test` run command that
/// conjoins the predicate literals with it.
std::string generate_aunit_file(const TestCase& test, const ModelSchema& schema);

/// Mean wall-clock milliseconds of generate_command_string over `iterations` runs.
double bench_translate(const TestCase& test, const ModelSchema& schema, int iterations);

}  // namespace crucible
