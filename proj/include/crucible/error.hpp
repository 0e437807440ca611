#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crucible {

/// Location of a construct in model source text. Lines and columns are 1-based,
/// columns count bytes.
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  int line = 1;
  int column = 1;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class ErrorCode {
  // parsing and resolution
  SyntaxError,
  UnsupportedFeature,
  UnknownName,
  DuplicateName,
  CyclicHierarchy,
  InvalidHierarchy,
  ArityError,
  RecursiveCall,
  // store
  DuplicateProjectName,
  DuplicateTestName,
  InvalidName,
  NotFound,
  IoError,
  CorruptProject,
  // canvas editing
  UnknownSig,
  AbstractSig,
  UnknownAtom,
  UnknownConnection,
  UnknownPred,
  UnknownRelation,
  UnknownTest,
  ArityMismatch,
  BadArgs,
  BadPrefix,
  GuidanceViolation,
  // execution
  StructuralBlock,
  UniverseTooLarge,
  // transport
  BadRequest,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<Span> span = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Span>& span() const noexcept { return span_; }
  /// The message without the "line:col: " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<Span> span_;
  std::string detail_;
};

}  // namespace crucible
