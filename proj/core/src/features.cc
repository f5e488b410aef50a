#include "chromatone/features.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chromatone {

namespace {

constexpr double kSharpnessScale = 0.11;
constexpr std::size_t kAcuityKneeBand = 14;
constexpr double kDegenerateSpread = 1e-9;

}  // namespace

EnergyRms EnergyAndRms(std::span<const double> samples) {
  double energy = 0.0;
  for (double x : samples) energy += x * x;
  const double rms = samples.empty() ? 0.0 : std::sqrt(energy / samples.size());
  return {energy, rms};
}

CentroidResult SpectralCentroid(const Spectrum& s) {
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
    weighted += s.BinFrequency(k) * s.magnitudes[k];
    total += s.magnitudes[k];
  }
  if (total <= 0.0) return {0.0, true};
  return {weighted / total, false};
}

double SpectralFlatness(const Spectrum& s) {
  if (s.magnitudes.size() < 2) return 1.0;
  double log_sum = 0.0;
  double sum = 0.0;
  for (std::size_t k = 1; k < s.magnitudes.size(); ++k) {
    const double m = s.magnitudes[k] + kFlatnessEpsilon;
    log_sum += std::log(m);
    sum += m;
  }
  const double count = static_cast<double>(s.magnitudes.size() - 1);
  const double flatness = std::exp(log_sum / count) / (sum / count);
  return std::clamp(flatness, 0.0, 1.0);
}

double SpectralKurtosis(const Spectrum& s) {
  const double total = std::accumulate(s.magnitudes.begin(), s.magnitudes.end(), 0.0);
  if (total <= 0.0) return 3.0;
  double mean = 0.0;
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
    mean += static_cast<double>(k) * s.magnitudes[k];
  }
  mean /= total;
  double m2 = 0.0;
  double m4 = 0.0;
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
    const double d = static_cast<double>(k) - mean;
    const double d2 = d * d;
    m2 += d2 * s.magnitudes[k];
    m4 += d2 * d2 * s.magnitudes[k];
  }
  m2 /= total;
  m4 /= total;
  if (std::sqrt(m2) < kDegenerateSpread) return 3.0;
  return m4 / (m2 * m2);
}

BarkLoudness BarkBandLoudness(const Spectrum& s) {
  BarkLoudness out;
  const double nyquist = s.sample_rate / 2.0;
  std::array<double, kBarkBands> power{};
  std::size_t band = 0;
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
    const double f = s.BinFrequency(k);
    while (band < kBarkBands && f >= kBarkEdgesHz[band + 1]) ++band;
    if (band == kBarkBands) break;
    if (kBarkEdgesHz[band + 1] > nyquist) break;  // band not fully below Nyquist
    power[band] += s.magnitudes[k] * s.magnitudes[k];
  }
  for (std::size_t b = 0; b < kBarkBands; ++b) {
    out.specific[b] = power[b] > 0.0 ? std::pow(power[b], kLoudnessExponent) : 0.0;
    out.total += out.specific[b];
  }
  return out;
}

double PerceptualSpread(std::span<const double, kBarkBands> specific, double total) {
  if (total <= 0.0) return 0.0;
  const double peak = *std::max_element(specific.begin(), specific.end());
  const double r = (total - peak) / total;
  return std::clamp(r * r, 0.0, 1.0);
}

double SharpnessWeight(std::size_t band) {
  if (band < kAcuityKneeBand) return 1.0;
  return 0.066 * std::exp(0.171 * static_cast<double>(band + 1));
}

double PerceptualSharpness(std::span<const double, kBarkBands> specific, double total) {
  if (total <= 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t b = 0; b < kBarkBands; ++b) {
    acc += static_cast<double>(b + 1) * SharpnessWeight(b) * specific[b];
  }
  return kSharpnessScale * acc / total;
}

FeatureExtractor::FeatureExtractor(std::size_t frame_size) : analyzer_(frame_size) {}

FeatureVector FeatureExtractor::Extract(const AudioFrame& frame) {
  const Spectrum spectrum = analyzer_.Compute(frame);
  return Extract(frame, spectrum);
}

FeatureVector FeatureExtractor::Extract(const AudioFrame& frame, const Spectrum& spectrum) const {
  FeatureVector f;
  const auto [energy, rms] = EnergyAndRms(frame.samples);
  f.energy = energy;
  f.rms = rms;

  const CentroidResult centroid = SpectralCentroid(spectrum);
  f.spectral_centroid = centroid.hz;
  f.silent = centroid.silent;
  f.spectral_flatness = SpectralFlatness(spectrum);
  f.spectral_kurtosis = SpectralKurtosis(spectrum);

  const BarkLoudness loudness = BarkBandLoudness(spectrum);
  f.specific_loudness = loudness.specific;
  f.loudness_total = loudness.total;
  f.perceptual_spread = PerceptualSpread(f.specific_loudness, f.loudness_total);
  f.perceptual_sharpness = PerceptualSharpness(f.specific_loudness, f.loudness_total);

  f.frame_index = frame.index;
  f.timestamp = frame.timestamp;
  f.sample_rate = frame.sample_rate;
  f.frame_size = frame.size();
  return f;
}

FeatureVector ExtractFeatures(const AudioFrame& frame) {
  FeatureExtractor extractor(frame.size());
  return extractor.Extract(frame);
}

}  // namespace chromatone
