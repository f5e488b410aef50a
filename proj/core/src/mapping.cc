#include "chromatone/mapping.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "chromatone/error.h"

namespace chromatone {

namespace {

constexpr int kTopOctave = 8;

[[noreturn]] void Invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kConfiguration, "mapping config: " + field + " " + why);
}

bool InUnit(double v) { return v >= 0.0 && v <= 1.0; }
bool InAlphaRange(double v) { return v > 0.0 && v <= 1.0; }

double Ema(double previous, double raw, double alpha) {
  return alpha * raw + (1.0 - alpha) * previous;
}

}  // namespace

void ValidateMappingConfig(const MappingConfig& c) {
  for (std::size_t i = 0; i < c.palette.size(); ++i) {
    if (!(c.palette[i] >= 0.0 && c.palette[i] < 360.0)) {
      Invalid("palette[" + std::to_string(i) + "]", "must lie in [0, 360)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (c.palette[i] == c.palette[j]) {
        Invalid("palette", "hues must be distinct (entries " + std::to_string(j) + " and " +
                               std::to_string(i) + ")");
      }
    }
  }
  if (!(InUnit(c.saturation_low) && InUnit(c.saturation_high) &&
        c.saturation_low < c.saturation_high)) {
    Invalid("saturation_low/saturation_high", "need 0 <= low < high <= 1");
  }
  if (!InUnit(c.lightness)) Invalid("lightness", "must lie in [0, 1]");
  if (!(c.scale_min > 0.0 && c.scale_min < c.scale_max && std::isfinite(c.scale_max))) {
    Invalid("scale_min/scale_max", "need 0 < min < max");
  }
  if (!(c.energy_floor_per_sample > 0.0 && std::isfinite(c.energy_floor_per_sample))) {
    Invalid("energy_floor_per_sample", "must be positive");
  }
  if (!InAlphaRange(c.peak_decay)) Invalid("peak_decay", "must lie in (0, 1]");
  if (!(c.centroid_hue_shift >= 0.0 && c.centroid_hue_shift <= 180.0)) {
    Invalid("centroid_hue_shift", "must lie in [0, 180]");
  }
  if (!InAlphaRange(c.alpha_color)) Invalid("alpha_color", "must lie in (0, 1]");
  if (!InAlphaRange(c.alpha_scale)) Invalid("alpha_scale", "must lie in (0, 1]");
  if (!InAlphaRange(c.alpha_texture)) Invalid("alpha_texture", "must lie in (0, 1]");
  if (!(c.roughness_gamma > 0.0 && std::isfinite(c.roughness_gamma))) {
    Invalid("roughness_gamma", "must be positive");
  }
  if (!(c.sharpness_reference > 0.0 && std::isfinite(c.sharpness_reference))) {
    Invalid("sharpness_reference", "must be positive");
  }
  if (!(c.kurtosis_reference > 0.0 && std::isfinite(c.kurtosis_reference))) {
    Invalid("kurtosis_reference", "must be positive");
  }
}

double WrapHue(double degrees) {
  double h = std::fmod(degrees, 360.0);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h = 0.0;
  return h;
}

double HueDelta(double from, double to) {
  double d = std::fmod(to - from, 360.0);
  if (d < -180.0) d += 360.0;
  if (d >= 180.0) d -= 360.0;
  return d;
}

RawColor MapPitchToColor(const PitchResult& pitch, const MappingConfig& config,
                         const MapperState& state) {
  if (const auto* est = std::get_if<PitchEstimate>(&pitch)) {
    const auto note_class = static_cast<std::size_t>(est->note.note_class);
    const double t = std::clamp(static_cast<double>(est->note.octave) / kTopOctave, 0.0, 1.0);
    return {config.palette[note_class],
            config.saturation_low + (config.saturation_high - config.saturation_low) * t, false};
  }
  if (state.previous) return {state.previous->hue, state.previous->saturation, true};
  return {config.palette[0], config.saturation_low, true};
}

double EnergyReference(const MapperState& state, std::size_t frame_size,
                       const MappingConfig& config) {
  const double floor = static_cast<double>(frame_size) * config.energy_floor_per_sample;
  return std::max(floor, state.running_peak);
}

double MapEnergyToScale(const FeatureVector& features, const MapperState& state,
                        const MappingConfig& config) {
  const double reference = EnergyReference(state, features.frame_size, config);
  const double energy = std::max(0.0, features.energy);
  if (!(reference > 0.0)) return energy > 0.0 ? config.scale_max : config.scale_min;
  const double normalized = std::min(1.0, energy / reference);
  return config.scale_min + (config.scale_max - config.scale_min) * normalized;
}

RawTexture MapTimbreToTexture(const FeatureVector& f, const MappingConfig& config) {
  RawTexture t;
  const double flatness = std::clamp(f.spectral_flatness, 0.0, 1.0);
  const double base = config.roughness_inverted ? 1.0 - flatness : flatness;
  t.roughness = std::pow(base, config.roughness_gamma);
  t.sharpness_glow = std::clamp(f.perceptual_sharpness / config.sharpness_reference, 0.0, 1.0);
  t.granularity = std::clamp(
      std::log1p(std::max(0.0, f.spectral_kurtosis)) / std::log1p(config.kurtosis_reference),
      0.0, 1.0);
  t.displacement = std::clamp(f.perceptual_spread, 0.0, 1.0);
  const double quarter_rate = f.sample_rate / 4.0;
  const double position =
      quarter_rate > 0.0 ? std::clamp(f.spectral_centroid / quarter_rate, 0.0, 1.0) : 0.0;
  t.hue_shift = -config.centroid_hue_shift + 2.0 * config.centroid_hue_shift * position;
  return t;
}

VisualFrame MapFrame(const PitchResult& pitch, const FeatureVector& features,
                     MapperState& state, const MappingConfig& config) {
  const std::uint64_t index = features.frame_index;
  if (FrameIndexOf(pitch) != index) {
    throw Error(ErrorCode::kSequencing,
                "pitch frame " + std::to_string(FrameIndexOf(pitch)) +
                    " does not match feature frame " + std::to_string(index));
  }
  if (state.last_index && index <= *state.last_index) {
    throw Error(ErrorCode::kSequencing, "frame " + std::to_string(index) +
                                            " does not follow frame " +
                                            std::to_string(*state.last_index));
  }

  const RawColor color = MapPitchToColor(pitch, config, state);
  const double scale = MapEnergyToScale(features, state, config);
  const RawTexture texture = MapTimbreToTexture(features, config);
  const double hue = color.held ? color.hue : WrapHue(color.hue + texture.hue_shift);

  VisualFrame out;
  out.voiced = !color.held;
  out.frame_index = index;
  out.timestamp = features.timestamp;

  if (!state.previous) {
    out.hue = hue;
    out.saturation = color.saturation;
    out.lightness = config.lightness;
    out.scale = scale;
    out.roughness = texture.roughness;
    out.sharpness_glow = texture.sharpness_glow;
    out.granularity = texture.granularity;
    out.displacement = texture.displacement;
  } else {
    const VisualFrame& prev = *state.previous;
    if (color.held) {
      out.hue = prev.hue;
      out.saturation = prev.saturation;
      out.lightness = prev.lightness;
    } else {
      out.hue = WrapHue(prev.hue + config.alpha_color * HueDelta(prev.hue, hue));
      out.saturation = Ema(prev.saturation, color.saturation, config.alpha_color);
      out.lightness = Ema(prev.lightness, config.lightness, config.alpha_color);
    }
    out.scale = Ema(prev.scale, scale, config.alpha_scale);
    out.roughness = Ema(prev.roughness, texture.roughness, config.alpha_texture);
    out.sharpness_glow = Ema(prev.sharpness_glow, texture.sharpness_glow, config.alpha_texture);
    out.granularity = Ema(prev.granularity, texture.granularity, config.alpha_texture);
    out.displacement = Ema(prev.displacement, texture.displacement, config.alpha_texture);
  }

  // Round-off guard; EMA of in-range values stays in range mathematically.
  out.saturation = std::clamp(out.saturation, 0.0, 1.0);
  out.lightness = std::clamp(out.lightness, 0.0, 1.0);
  out.scale = std::clamp(out.scale, config.scale_min, config.scale_max);
  out.roughness = std::clamp(out.roughness, 0.0, 1.0);
  out.sharpness_glow = std::clamp(out.sharpness_glow, 0.0, 1.0);
  out.granularity = std::clamp(out.granularity, 0.0, 1.0);
  out.displacement = std::clamp(out.displacement, 0.0, 1.0);

  state.previous = out;
  state.running_peak = std::max(std::max(0.0, features.energy),
                                state.running_peak * config.peak_decay);
  state.last_index = index;
  return out;
}

}  // namespace chromatone
