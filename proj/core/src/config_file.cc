#include "chromatone/config_file.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "chromatone/error.h"
#include "number_format.h"

namespace chromatone {

namespace {

using internal::FormatNumber;
using internal::ParseDouble;
using internal::Trim;

struct NumericKey {
  std::string_view name;
  double MappingConfig::*mapping = nullptr;
  double PitchConfig::*pitch = nullptr;
};

constexpr NumericKey kNumericKeys[] = {
    {"saturation_low", &MappingConfig::saturation_low, nullptr},
    {"saturation_high", &MappingConfig::saturation_high, nullptr},
    {"lightness", &MappingConfig::lightness, nullptr},
    {"scale_min", &MappingConfig::scale_min, nullptr},
    {"scale_max", &MappingConfig::scale_max, nullptr},
    {"energy_floor_per_sample", &MappingConfig::energy_floor_per_sample, nullptr},
    {"peak_decay", &MappingConfig::peak_decay, nullptr},
    {"centroid_hue_shift", &MappingConfig::centroid_hue_shift, nullptr},
    {"alpha_color", &MappingConfig::alpha_color, nullptr},
    {"alpha_scale", &MappingConfig::alpha_scale, nullptr},
    {"alpha_texture", &MappingConfig::alpha_texture, nullptr},
    {"roughness_gamma", &MappingConfig::roughness_gamma, nullptr},
    {"sharpness_reference", &MappingConfig::sharpness_reference, nullptr},
    {"kurtosis_reference", &MappingConfig::kurtosis_reference, nullptr},
    {"voicing_threshold", nullptr, &PitchConfig::voicing_threshold},
    {"peak_threshold", nullptr, &PitchConfig::peak_threshold},
    {"min_frequency", nullptr, &PitchConfig::min_frequency},
    {"max_frequency", nullptr, &PitchConfig::max_frequency},
    {"silence_rms", nullptr, &PitchConfig::silence_rms},
};

[[noreturn]] void Fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kConfiguration, "config line " + std::to_string(line) + ": " + message,
              ErrorLocation{line, std::nullopt});
}

double RequireNumber(std::string_view value, std::size_t line, std::string_view key) {
  const auto v = ParseDouble(value);
  if (!v || !std::isfinite(*v)) {
    Fail(line, "value for '" + std::string(key) + "' is not a finite number: '" +
                   std::string(value) + "'");
  }
  return *v;
}

}  // namespace

AnalysisSettings ParseSettings(std::string_view text, AnalysisSettings base) {
  AnalysisSettings s = std::move(base);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) Fail(line_no, "expected 'key = value'");
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));

    if (key == "palette") {
      std::vector<double> hues;
      std::size_t p = 0;
      while (p <= value.size()) {
        const std::size_t comma = std::min(value.find(',', p), value.size());
        hues.push_back(RequireNumber(Trim(value.substr(p, comma - p)), line_no, key));
        p = comma + 1;
      }
      if (hues.size() != s.mapping.palette.size()) {
        Fail(line_no, "palette needs 12 hues, got " + std::to_string(hues.size()));
      }
      std::copy(hues.begin(), hues.end(), s.mapping.palette.begin());
      continue;
    }
    if (key == "roughness_inverted") {
      if (value == "true" || value == "1") {
        s.mapping.roughness_inverted = true;
      } else if (value == "false" || value == "0") {
        s.mapping.roughness_inverted = false;
      } else {
        Fail(line_no, "roughness_inverted must be true or false");
      }
      continue;
    }

    bool known = false;
    for (const auto& k : kNumericKeys) {
      if (k.name != key) continue;
      const double v = RequireNumber(value, line_no, key);
      if (k.mapping) s.mapping.*k.mapping = v;
      if (k.pitch) s.pitch.*k.pitch = v;
      known = true;
      break;
    }
    if (!known) Fail(line_no, "unknown key '" + std::string(key) + "'");
  }
  ValidateMappingConfig(s.mapping);
  return s;
}

AnalysisSettings LoadSettingsFile(const std::filesystem::path& path, AnalysisSettings base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfiguration, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseSettings(buf.str(), std::move(base));
}

std::string FormatSettings(const AnalysisSettings& s) {
  std::string out;
  out += "palette = ";
  for (std::size_t i = 0; i < s.mapping.palette.size(); ++i) {
    if (i) out += ", ";
    out += FormatNumber(s.mapping.palette[i]);
  }
  out += '\n';
  for (const auto& k : kNumericKeys) {
    const double v = k.mapping ? s.mapping.*k.mapping : s.pitch.*k.pitch;
    out += std::string(k.name) + " = " + FormatNumber(v) + '\n';
  }
  out += std::string("roughness_inverted = ") +
         (s.mapping.roughness_inverted ? "true" : "false") + '\n';
  return out;
}

}  // namespace chromatone
