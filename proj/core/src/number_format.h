#ifndef CHROMATONE_SRC_NUMBER_FORMAT_H_
#define CHROMATONE_SRC_NUMBER_FORMAT_H_

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace chromatone::internal {

/// Shortest text that parses back to the same value; locale independent.
template <typename T>
void AppendNumber(std::string& out, T value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

template <typename T>
std::string FormatNumber(T value) {
  std::string s;
  AppendNumber(s, value);
  return s;
}

inline std::optional<double> ParseDouble(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

inline std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace chromatone::internal

#endif  // CHROMATONE_SRC_NUMBER_FORMAT_H_
