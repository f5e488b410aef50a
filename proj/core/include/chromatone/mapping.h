#ifndef CHROMATONE_MAPPING_H_
#define CHROMATONE_MAPPING_H_

#include <array>
#include <cstdint>
#include <optional>

#include "chromatone/features.h"
#include "chromatone/pitch.h"

namespace chromatone {

/// Visual parameters for the rendered sphere.
struct VisualFrame {
  double hue = 0.0;         // degrees, [0, 360)
  double saturation = 0.0;  // [0, 1]
  double lightness = 0.5;   // [0, 1]
  double scale = 1.0;       // multiplier of base size, [scale_min, scale_max]
  double roughness = 0.0;       // [0, 1]
  double sharpness_glow = 0.0;  // [0, 1], luminance boost
  double granularity = 0.0;     // [0, 1], texture noise frequency
  double displacement = 0.0;    // [0, 1], surface perturbation amplitude
  bool voiced = false;
  std::uint64_t frame_index = 0;
  double timestamp = 0.0;

  bool operator==(const VisualFrame&) const = default;
};

struct MappingConfig {
  // Hue per note class, C first. Default: evenly spaced chromatic circle.
  std::array<double, 12> palette = {0, 30, 60, 90, 120, 150, 180, 210, 240, 270, 300, 330};
  double saturation_low = 0.25;   // octave 0
  double saturation_high = 0.95;  // octave 8
  double lightness = 0.5;
  double scale_min = 0.6;
  double scale_max = 2.0;
  double energy_floor_per_sample = 0.04;  // energy reference floor is N * this
  double peak_decay = 0.999;              // running-peak decay per frame
  double centroid_hue_shift = 20.0;       // +/- degrees
  double alpha_color = 0.3;
  double alpha_scale = 0.5;
  double alpha_texture = 0.2;
  double roughness_gamma = 0.5;
  bool roughness_inverted = false;  // true: roughness = (1 - flatness)^gamma
  double sharpness_reference = 3.0;
  double kurtosis_reference = 100.0;

  bool operator==(const MappingConfig&) const = default;
};

/// Throws Error(kConfiguration) naming the first offending field.
void ValidateMappingConfig(const MappingConfig& config);

struct MapperState {
  std::optional<VisualFrame> previous;  // last smoothed output
  double running_peak = 0.0;
  std::optional<std::uint64_t> last_index;

  bool operator==(const MapperState&) const = default;
};

struct RawColor {
  double hue = 0.0;
  double saturation = 0.0;
  bool held = false;  // unvoiced: values copied from the previous frame
};

struct RawTexture {
  double roughness = 0.0;
  double sharpness_glow = 0.0;
  double granularity = 0.0;
  double displacement = 0.0;
  double hue_shift = 0.0;  // degrees
};

/// Base hue from the palette, saturation rising linearly over octaves 0..8.
/// Unvoiced input returns the previous smoothed color (or the neutral start
/// color before any output) with `held` set.
RawColor MapPitchToColor(const PitchResult& pitch, const MappingConfig& config,
                         const MapperState& state = {});

/// Energy reference used for the given state and frame size.
double EnergyReference(const MapperState& state, std::size_t frame_size,
                       const MappingConfig& config);

/// Linear in energy / reference, saturating at scale_max. Reads the state
/// without updating it.
double MapEnergyToScale(const FeatureVector& features, const MapperState& state,
                        const MappingConfig& config);

RawTexture MapTimbreToTexture(const FeatureVector& features, const MappingConfig& config);

/// Signed shortest angular difference to - from, in [-180, 180).
double HueDelta(double from, double to);
double WrapHue(double degrees);

/// Composes the three mappings, applies per-group exponential smoothing and
/// advances the state. Throws Error(kSequencing) if pitch and features come
/// from different frames or the index does not advance.
VisualFrame MapFrame(const PitchResult& pitch, const FeatureVector& features,
                     MapperState& state, const MappingConfig& config);

}  // namespace chromatone

#endif  // CHROMATONE_MAPPING_H_
