#ifndef CHROMATONE_CONFIG_FILE_H_
#define CHROMATONE_CONFIG_FILE_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "chromatone/mapping.h"
#include "chromatone/pitch.h"

namespace chromatone {

struct AnalysisSettings {
  MappingConfig mapping;
  PitchConfig pitch;
  bool operator==(const AnalysisSettings&) const = default;
};

/// Parses `key = value` lines. Keys mirror the MappingConfig and PitchConfig
/// field names; `palette` takes 12 comma-separated hues. `#` starts a
/// comment. Unknown keys and bad values raise Error(kConfiguration) with the
/// line number. Unlisted keys keep the values already in `base`.
AnalysisSettings ParseSettings(std::string_view text, AnalysisSettings base = {});
AnalysisSettings LoadSettingsFile(const std::filesystem::path& path,
                                  AnalysisSettings base = {});

std::string FormatSettings(const AnalysisSettings& settings);

}  // namespace chromatone

#endif  // CHROMATONE_CONFIG_FILE_H_
