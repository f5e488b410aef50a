#ifndef CHROMATONE_FEATURES_H_
#define CHROMATONE_FEATURES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "chromatone/audio_frame.h"
#include "chromatone/spectrum.h"

namespace chromatone {

inline constexpr std::size_t kBarkBands = 24;

/// Zwicker critical-band edges in Hz; band b spans [edge[b], edge[b + 1]).
inline constexpr std::array<double, kBarkBands + 1> kBarkEdgesHz = {
    0,    100,  200,  300,  400,  510,  630,  770,  920,
    1080, 1270, 1480, 1720, 2000, 2320, 2700, 3150, 3700,
    4400, 5300, 6400, 7700, 9500, 12000, 15500};

inline constexpr double kLoudnessExponent = 0.23;
inline constexpr double kFlatnessEpsilon = 1e-12;

struct FeatureVector {
  double energy = 0.0;  // sum of squared raw samples
  double rms = 0.0;
  double spectral_centroid = 0.0;  // Hz
  double spectral_flatness = 1.0;
  double spectral_kurtosis = 3.0;
  std::array<double, kBarkBands> specific_loudness{};
  double loudness_total = 0.0;
  double perceptual_spread = 0.0;
  double perceptual_sharpness = 0.0;
  bool silent = true;  // all spectral magnitudes were zero

  std::uint64_t frame_index = 0;
  double timestamp = 0.0;
  int sample_rate = 0;
  std::size_t frame_size = 0;

  bool operator==(const FeatureVector&) const = default;
};

struct EnergyRms {
  double energy = 0.0;
  double rms = 0.0;
};

struct CentroidResult {
  double hz = 0.0;
  bool silent = false;
};

struct BarkLoudness {
  std::array<double, kBarkBands> specific{};
  double total = 0.0;
};

EnergyRms EnergyAndRms(std::span<const double> samples);

CentroidResult SpectralCentroid(const Spectrum& s);

/// Geometric over arithmetic mean of |X_k| + eps for k = 1 .. N/2.
double SpectralFlatness(const Spectrum& s);

/// Raw fourth standardized moment of the magnitude distribution over bin
/// index. 3.0 for silence and for single-bin spectra.
double SpectralKurtosis(const Spectrum& s);

/// Per-band (sum of |X_k|^2)^0.23 over the Zwicker bands. Bands whose upper
/// edge lies above Nyquist stay zero.
BarkLoudness BarkBandLoudness(const Spectrum& s);

double PerceptualSpread(std::span<const double, kBarkBands> specific, double total);
double PerceptualSharpness(std::span<const double, kBarkBands> specific, double total);

/// Acuity weight applied to 0-based band b in PerceptualSharpness.
double SharpnessWeight(std::size_t band);

/// Runs every feature over one frame. Energy uses the raw samples; spectral
/// features use the Hann-windowed spectrum. Not thread-safe (owns FFT state).
class FeatureExtractor {
 public:
  explicit FeatureExtractor(std::size_t frame_size);

  FeatureVector Extract(const AudioFrame& frame);
  /// Same, reusing a spectrum already computed for this frame.
  FeatureVector Extract(const AudioFrame& frame, const Spectrum& spectrum) const;

  SpectrumAnalyzer& analyzer() { return analyzer_; }

 private:
  SpectrumAnalyzer analyzer_;
};

FeatureVector ExtractFeatures(const AudioFrame& frame);

}  // namespace chromatone

#endif  // CHROMATONE_FEATURES_H_
