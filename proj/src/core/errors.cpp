#include "probe/core/errors.hpp"

namespace probe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AllDeprecated: return "AllDeprecated";
    case ErrorCode::NoUsableName: return "NoUsableName";
    case ErrorCode::MissingControlName: return "MissingControlName";
    case ErrorCode::PivotNotFound: return "PivotNotFound";
    case ErrorCode::PivotAmbiguous: return "PivotAmbiguous";
    case ErrorCode::TargetAbsent: return "TargetAbsent";
    case ErrorCode::FatalAuth: return "FatalAuth";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NoValidRecords: return "NoValidRecords";
    case ErrorCode::EmptyAlignment: return "EmptyAlignment";
    case ErrorCode::AllZeroColumns: return "AllZeroColumns";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::DegenerateSamples: return "DegenerateSamples";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Aborted: return "Aborted";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace probe
