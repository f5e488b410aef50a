#include "chromatone/spectrum.h"

#include <cmath>
#include <numbers>
#include <string>

#include "chromatone/error.h"
#include "fft.h"

namespace chromatone {

std::vector<double> HannWindow(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom));
  }
  return w;
}

namespace {

std::size_t CheckedFrameSize(std::size_t n) {
  if (!IsValidFrameSize(n)) {
    throw Error(ErrorCode::kConfiguration,
                "frame size " + std::to_string(n) + " is not a power of two in [256, 8192]");
  }
  return n;
}

}  // namespace

SpectrumAnalyzer::SpectrumAnalyzer(std::size_t frame_size)
    : window_(HannWindow(CheckedFrameSize(frame_size))),
      fft_(std::make_unique<RealFft>(frame_size)) {}

SpectrumAnalyzer::~SpectrumAnalyzer() = default;
SpectrumAnalyzer::SpectrumAnalyzer(SpectrumAnalyzer&&) noexcept = default;
SpectrumAnalyzer& SpectrumAnalyzer::operator=(SpectrumAnalyzer&&) noexcept = default;

Spectrum SpectrumAnalyzer::Compute(const AudioFrame& frame) {
  ValidateFrame(frame);
  const std::size_t n = window_.size();
  if (frame.size() != n) {
    throw Error(ErrorCode::kDomain, "frame size " + std::to_string(frame.size()) +
                                        " does not match analyzer size " + std::to_string(n));
  }
  auto in = fft_->real();
  for (std::size_t i = 0; i < n; ++i) in[i] = window_[i] * frame.samples[i];
  fft_->Forward();

  Spectrum s;
  s.frame_size = n;
  s.sample_rate = frame.sample_rate;
  s.bin_hz = static_cast<double>(frame.sample_rate) / static_cast<double>(n);
  s.source_frame_index = frame.index;
  auto bins = fft_->bins();
  s.magnitudes.resize(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) s.magnitudes[k] = std::abs(bins[k]);
  return s;
}

Spectrum ComputeSpectrum(const AudioFrame& frame) {
  ValidateFrame(frame);
  SpectrumAnalyzer analyzer(frame.size());
  return analyzer.Compute(frame);
}

}  // namespace chromatone
