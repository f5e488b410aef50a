#ifndef CHROMATONE_SPECTRUM_H_
#define CHROMATONE_SPECTRUM_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "chromatone/audio_frame.h"

namespace chromatone {

/// Magnitude spectrum of a Hann-windowed frame, bins 0 .. N/2.
struct Spectrum {
  std::vector<double> magnitudes;
  std::size_t frame_size = 0;
  int sample_rate = 0;
  double bin_hz = 0.0;  // sample_rate / frame_size
  std::uint64_t source_frame_index = 0;

  double BinFrequency(std::size_t k) const { return static_cast<double>(k) * bin_hz; }
};

/// Symmetric Hann window, w[n] = 0.5 * (1 - cos(2 pi n / (N - 1))).
std::vector<double> HannWindow(std::size_t n);

class RealFft;

/// Reusable spectrum computation for one frame size. Holds its own FFT plan
/// and scratch, so give each thread its own analyzer.
class SpectrumAnalyzer {
 public:
  explicit SpectrumAnalyzer(std::size_t frame_size);
  ~SpectrumAnalyzer();
  SpectrumAnalyzer(SpectrumAnalyzer&&) noexcept;
  SpectrumAnalyzer& operator=(SpectrumAnalyzer&&) noexcept;

  std::size_t frame_size() const { return window_.size(); }
  const std::vector<double>& window() const { return window_; }

  Spectrum Compute(const AudioFrame& frame);

 private:
  std::vector<double> window_;
  std::unique_ptr<RealFft> fft_;
};

/// One-off convenience wrapper; builds a temporary analyzer.
Spectrum ComputeSpectrum(const AudioFrame& frame);

}  // namespace chromatone

#endif  // CHROMATONE_SPECTRUM_H_
