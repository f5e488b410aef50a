#ifndef CHROMATONE_SYNTH_H_
#define CHROMATONE_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace chromatone {

enum class WaveKind { kSine, kSquare, kWhiteNoise, kSilence };

std::optional<WaveKind> ParseWaveKind(std::string_view name);
std::string_view WaveKindName(WaveKind kind);

struct SynthParams {
  WaveKind kind = WaveKind::kSine;
  double frequency = 440.0;  // ignored for noise and silence
  double duration = 1.0;     // seconds
  double amplitude = 1.0;    // [0, 1]
  int sample_rate = 44100;
  std::uint64_t seed = 0;    // white noise only
};

/// Deterministic test-signal generator.
///   sine:   A * sin(2 pi f n / sr)
///   square: A * sign(sin(2 pi f n / sr)), with sign(0) = +1
///   noise:  uniform in [-A, A] from a seeded 64-bit Mersenne Twister
/// Throws Error(kAliasing) for tonal kinds with f >= sr / 2 and
/// Error(kDomain) for other out-of-range arguments.
std::vector<double> Synthesize(const SynthParams& params);

}  // namespace chromatone

#endif  // CHROMATONE_SYNTH_H_
