#include "crucible/error.hpp"

namespace crucible {

namespace {

std::string with_location(const std::string& message, const std::optional<Span>& span) {
  if (!span) return message;
  return std::to_string(span->line) + ":" + std::to_string(span->column) + ": " + message;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::InvalidHierarchy: return "InvalidHierarchy";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::RecursiveCall: return "RecursiveCall";
    case ErrorCode::DuplicateProjectName: return "DuplicateProjectName";
    case ErrorCode::DuplicateTestName: return "DuplicateTestName";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CorruptProject: return "CorruptProject";
    case ErrorCode::UnknownSig: return "UnknownSig";
    case ErrorCode::AbstractSig: return "AbstractSig";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::UnknownConnection: return "UnknownConnection";
    case ErrorCode::UnknownPred: return "UnknownPred";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::UnknownTest: return "UnknownTest";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadArgs: return "BadArgs";
    case ErrorCode::BadPrefix: return "BadPrefix";
    case ErrorCode::GuidanceViolation: return "GuidanceViolation";
    case ErrorCode::StructuralBlock: return "StructuralBlock";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<Span> span)
    : std::runtime_error(with_location(message, span)), code_(code), span_(span), detail_(message) {}

}  // namespace crucible
