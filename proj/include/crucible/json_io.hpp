#pragma once

// JSON views of the domain types. Kept out of the core headers so that only
// the store, the service and the CLI pay for json.hpp.

#include <json.hpp>

#include "crucible/error.hpp"
#include "crucible/guidance.hpp"
#include "crucible/oracle.hpp"
#include "crucible/run.hpp"
#include "crucible/schema.hpp"
#include "crucible/testcase.hpp"

namespace crucible {

using Json = nlohmann::ordered_json;

Json to_json(const ModelSchema& schema);
Json to_json(const Atom& atom);
Json to_json(const Connection& connection);
Json to_json(const TestCase& test);
Json to_json(const Valuation& valuation);
Json to_json(const Diagnostic& diagnostic);
Json to_json(const GuidanceVerdict& verdict);
Json to_json(const PreRunReport& report);
Json to_json(const RunResult& result);
Json to_json(const OracleResult& result);
/// {code, message, details}; details carries the verdict or pre-run report
/// for errors that have one.
Json to_json(const Error& error);

/// Throws Error(`onBadShape`) when the document does not have the expected
/// shape.
TestCase test_case_from_json(const Json& json, ErrorCode onBadShape);

}  // namespace crucible
