// Signal shared by the benchmark harness and the acceptance timing check.
#ifndef CHROMATONE_BENCHMARKS_WORKLOAD_H_
#define CHROMATONE_BENCHMARKS_WORKLOAD_H_

#include <cmath>
#include <numbers>
#include <vector>

#include "chromatone/synth.h"

namespace chromatone::bench {

inline constexpr int kRate = 44100;

// Two-note melody over light noise; roughly the load of a solo instrument.
inline std::vector<double> MusicLikeSignal(double seconds) {
  SynthParams noise{WaveKind::kWhiteNoise, 0, seconds, 0.05, kRate, 11};
  std::vector<double> x = Synthesize(noise);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double t = static_cast<double>(n) / kRate;
    const double f = (static_cast<int>(t * 2) % 2 == 0) ? 440.0 : 329.63;
    x[n] += 0.4 * std::sin(2 * std::numbers::pi * f * t) +
            0.2 * std::sin(4 * std::numbers::pi * f * t);
  }
  return x;
}

}  // namespace chromatone::bench

#endif  // CHROMATONE_BENCHMARKS_WORKLOAD_H_
