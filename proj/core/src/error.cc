#include "chromatone/error.h"

namespace chromatone {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContainer: return "container error";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kTruncated: return "truncated data";
    case ErrorCode::kAliasing: return "aliasing error";
    case ErrorCode::kInput: return "input error";
    case ErrorCode::kConfiguration: return "configuration error";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kSequencing: return "sequencing error";
    case ErrorCode::kVersion: return "version error";
    case ErrorCode::kSchema: return "schema error";
    case ErrorCode::kParse: return "parse error";
  }
  return "error";
}

Error Error::AtLine(std::size_t line) const {
  ErrorLocation loc = location_;
  loc.line = line;
  return Error(code_, "line " + std::to_string(line) + ": " + what(), loc);
}

}  // namespace chromatone
