#pragma once

#include <string>
#include <vector>

#include "crucible/error.hpp"
#include "crucible/testcase.hpp"

namespace crucible {

struct ModelSchema;

/// `rule` is empty when the edit is allowed. Otherwise it is one of abstract,
/// subsetSig, sigUpperBound, typing, duplicate, relUpperBound, subsetUpperBound,
/// markerInUse, notSubsetSig.
struct GuidanceVerdict {
  std::string rule;
  std::string message;
  std::string culprit;

  bool allowed() const { return rule.empty(); }
  static GuidanceVerdict allow() { return {}; }
  static GuidanceVerdict block(std::string rule, std::string message, std::string culprit) {
    return {std::move(rule), std::move(message), std::move(culprit)};
  }
};

class GuidanceViolation : public Error {
 public:
  explicit GuidanceViolation(GuidanceVerdict verdict, ErrorCode code = ErrorCode::GuidanceViolation)
      : Error(code, verdict.message), verdict_(std::move(verdict)) {}
  const GuidanceVerdict& verdict() const { return verdict_; }

 private:
  GuidanceVerdict verdict_;
};

GuidanceVerdict validate_atom_addition(const TestCase& test, const ModelSchema& schema,
                                       const std::string& sig);
GuidanceVerdict validate_connection_addition(const TestCase& test, const ModelSchema& schema,
                                             const std::string& relation,
                                             const std::vector<std::string>& atomIds);
/// Atoms that may fill the next column after `prefix`, in creation order.
std::vector<std::string> valid_connection_targets(const TestCase& test, const ModelSchema& schema,
                                                  const std::string& relation,
                                                  const std::vector<std::string>& prefix);

struct PreRunViolation {
  std::string kind;  // lowerBound, upperBound, higherArityMult, typing
  std::string subject;
  std::string detail;
};

struct PreRunReport {
  std::vector<PreRunViolation> violations;
  bool empty() const { return violations.empty(); }
};

/// Structural constraints the canvas does not enforce while editing, chiefly
/// lower bounds and higher-arity arrow multiplicities. Empty exactly when the
/// derived valuation satisfies every structural constraint.
PreRunReport pre_run_check(const TestCase& test, const ModelSchema& schema);

}  // namespace crucible
