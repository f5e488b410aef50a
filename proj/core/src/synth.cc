#include "chromatone/synth.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "chromatone/error.h"

namespace chromatone {

std::optional<WaveKind> ParseWaveKind(std::string_view name) {
  if (name == "sine") return WaveKind::kSine;
  if (name == "square") return WaveKind::kSquare;
  if (name == "white-noise" || name == "noise") return WaveKind::kWhiteNoise;
  if (name == "silence") return WaveKind::kSilence;
  return std::nullopt;
}

std::string_view WaveKindName(WaveKind kind) {
  switch (kind) {
    case WaveKind::kSine: return "sine";
    case WaveKind::kSquare: return "square";
    case WaveKind::kWhiteNoise: return "white-noise";
    case WaveKind::kSilence: return "silence";
  }
  return "?";
}

std::vector<double> Synthesize(const SynthParams& p) {
  if (p.sample_rate <= 0) throw Error(ErrorCode::kDomain, "sample rate must be positive");
  if (!(p.duration >= 0.0) || !std::isfinite(p.duration)) {
    throw Error(ErrorCode::kDomain, "duration must be a finite non-negative number");
  }
  if (!(p.amplitude >= 0.0 && p.amplitude <= 1.0)) {
    throw Error(ErrorCode::kDomain, "amplitude must lie in [0, 1]");
  }
  const bool tonal = p.kind == WaveKind::kSine || p.kind == WaveKind::kSquare;
  if (tonal) {
    if (!(p.frequency > 0.0) || !std::isfinite(p.frequency)) {
      throw Error(ErrorCode::kDomain, "frequency must be positive");
    }
    if (p.frequency >= p.sample_rate / 2.0) {
      throw Error(ErrorCode::kAliasing,
                  "frequency " + std::to_string(p.frequency) + " Hz is at or above Nyquist (" +
                      std::to_string(p.sample_rate / 2.0) + " Hz)");
    }
  }

  const auto count = static_cast<std::size_t>(std::llround(p.duration * p.sample_rate));
  std::vector<double> out(count, 0.0);
  const double w = 2.0 * std::numbers::pi * p.frequency / p.sample_rate;

  switch (p.kind) {
    case WaveKind::kSine:
      for (std::size_t n = 0; n < count; ++n) out[n] = p.amplitude * std::sin(w * n);
      break;
    case WaveKind::kSquare:
      for (std::size_t n = 0; n < count; ++n) {
        out[n] = std::sin(w * n) >= 0.0 ? p.amplitude : -p.amplitude;
      }
      break;
    case WaveKind::kWhiteNoise: {
      // Top 53 bits -> [0, 1); avoids the implementation-defined
      // uniform_real_distribution so fixtures match across standard libraries.
      std::mt19937_64 gen(p.seed);
      for (std::size_t n = 0; n < count; ++n) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        out[n] = p.amplitude * (2.0 * u - 1.0);
      }
      break;
    }
    case WaveKind::kSilence:
      break;
  }
  return out;
}

}  // namespace chromatone
