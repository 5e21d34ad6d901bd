#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oritree {

enum class ErrorCode {
  SelfLoop,
  DuplicateArc,
  VertexOutOfRange,
  NotConnected,
  HasCycle,
  EmptyTree,
  ParseError,
  ModeMismatch,
  CoreStepStuck,
  BoundExceeded,
  KTooSmall,
  BadParams,
  UnsupportedOrder,
  BadKind,
  InfeasibleAfterRetries,
  ConditionFailed,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::HasCycle: return "HasCycle";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::CoreStepStuck: return "CoreStepStuck";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BadKind: return "BadKind";
    case ErrorCode::InfeasibleAfterRetries: return "InfeasibleAfterRetries";
    case ErrorCode::ConditionFailed: return "ConditionFailed";
  }
  return "Unknown";
}

// All library failures are reported through this type; `code()` is the
// stable, machine-checkable part, `what()` carries the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + detail), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace oritree
