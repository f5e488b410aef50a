#ifndef CHROMATONE_ERROR_H_
#define CHROMATONE_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chromatone {

enum class ErrorCode {
  kContainer,          // malformed RIFF/WAVE structure
  kUnsupportedFormat,  // codec, bit depth or channel layout not handled
  kTruncated,          // data chunk shorter than declared
  kAliasing,           // tone frequency at or above Nyquist
  kInput,              // non-finite samples pushed into a stream
  kConfiguration,      // invalid engine, pitch or mapping configuration
  kDomain,             // argument outside an operation's domain
  kSequencing,         // frame indices out of order or mismatched
  kVersion,            // unknown frame-stream protocol version
  kSchema,             // structurally valid line missing or mistyping a key
  kParse,              // line is not well-formed structured text
};

std::string_view ErrorCodeName(ErrorCode code);

/// Where in a text stream an error was found. Both fields are optional since
/// most errors are not tied to a text location.
struct ErrorLocation {
  std::optional<std::size_t> line;         // 1-based
  std::optional<std::size_t> byte_offset;  // 0-based, within the line
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, ErrorLocation location = {})
      : std::runtime_error(message), code_(code), location_(location) {}

  ErrorCode code() const { return code_; }
  const ErrorLocation& location() const { return location_; }

  /// Copy of this error with a line number attached.
  Error AtLine(std::size_t line) const;

 private:
  ErrorCode code_;
  ErrorLocation location_;
};

}  // namespace chromatone

#endif  // CHROMATONE_ERROR_H_
