#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace probe {

enum class ErrorCode {
  InvalidArgument,
  Io,
  ParseError,
  AllDeprecated,
  NoUsableName,
  MissingControlName,
  PivotNotFound,
  PivotAmbiguous,
  TargetAbsent,
  FatalAuth,
  InvalidLabel,
  EmptySet,
  NoValidRecords,
  EmptyAlignment,
  AllZeroColumns,
  NoOverlap,
  DegenerateSamples,
  ShapeMismatch,
  Aborted,
};

std::string_view to_string(ErrorCode code);

// Every failure the library throws carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace probe
