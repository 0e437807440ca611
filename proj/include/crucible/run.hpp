#pragma once

#include <vector>

#include "crucible/guidance.hpp"
#include "crucible/structural.hpp"
#include "crucible/translator.hpp"

namespace crucible {

struct ModelSchema;

struct RunOptions {
  /// Run even when pre_run_check reports violations; the test then fails with
  /// the structural diagnostics instead of being blocked.
  bool allowStructuralFailure = false;
};

struct RunResult {
  bool passed = false;
  CommandString command;
  std::vector<Diagnostic> diagnostics;
  double elapsedMs = 0;

  /// Failing diagnostics only.
  std::vector<Diagnostic> failures() const;
};

class StructuralBlock : public Error {
 public:
  explicit StructuralBlock(PreRunReport report);
  const PreRunReport& report() const { return report_; }

 private:
  PreRunReport report_;
};

/// Passes iff every structural constraint, every fact and every enabled
/// predicate literal holds on the canvas valuation.
/// Throws StructuralBlock when pre_run_check is not clean and the options do
/// not allow structural failures.
RunResult run_test(const TestCase& test, const ModelSchema& schema, const RunOptions& options = {});

}  // namespace crucible
