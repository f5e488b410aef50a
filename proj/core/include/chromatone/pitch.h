#ifndef CHROMATONE_PITCH_H_
#define CHROMATONE_PITCH_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "chromatone/audio_frame.h"

namespace chromatone {

struct PitchConfig {
  double voicing_threshold = 0.60;  // minimum clarity to emit a note
  double peak_threshold = 0.90;     // fraction of the highest key maximum
  double min_frequency = 27.0;      // Hz
  double max_frequency = 4200.0;    // Hz
  double silence_rms = 1e-4;        // frames quieter than this are unvoiced

  bool operator==(const PitchConfig&) const = default;
};

/// Throws Error(kConfiguration) unless 0 < min < max < sample_rate / 2 and
/// both thresholds lie in (0, 1].
void ValidatePitchConfig(const PitchConfig& config, int sample_rate);

struct NoteQuantization {
  double midi_float = 0.0;
  int midi_note = 0;
  int note_class = 0;  // C = 0 .. B = 11
  int octave = 0;      // scientific pitch notation, A4 = 440 Hz
  double cents = 0.0;  // [-50, 50)

  bool operator==(const NoteQuantization&) const = default;
};

/// Equal-temperament quantization against A4 = 440 Hz. Ties round up so cents
/// stays in [-50, 50). Throws Error(kDomain) for non-positive or non-finite
/// input and for frequencies whose nearest note falls outside MIDI 0..127.
NoteQuantization Quantize(double frequency);

std::string_view NoteName(int note_class);

struct PitchEstimate {
  double frequency = 0.0;  // Hz
  double clarity = 0.0;    // [0, 1]
  NoteQuantization note;
  std::uint64_t frame_index = 0;

  bool operator==(const PitchEstimate&) const = default;
};

struct Unvoiced {
  double best_clarity = 0.0;
  std::uint64_t frame_index = 0;

  bool operator==(const Unvoiced&) const = default;
};

using PitchResult = std::variant<PitchEstimate, Unvoiced>;

inline bool IsVoiced(const PitchResult& r) {
  return std::holds_alternative<PitchEstimate>(r);
}
std::uint64_t FrameIndexOf(const PitchResult& r);
double ClarityOf(const PitchResult& r);

/// Normalized square difference function for lags 0 .. max_lag:
///   n(t) = 2 sum x[i] x[i+t] / sum (x[i]^2 + x[i+t]^2)
/// Requires max_lag < frame size. All-zero input yields all zeros.
std::vector<double> Nsdf(const AudioFrame& frame, std::size_t max_lag);

class RealFft;

/// McLeod pitch detector. Keeps FFT scratch for one frame size; give each
/// thread its own detector.
class PitchDetector {
 public:
  PitchDetector(std::size_t frame_size, int sample_rate, PitchConfig config = {});
  ~PitchDetector();
  PitchDetector(PitchDetector&&) noexcept;
  PitchDetector& operator=(PitchDetector&&) noexcept;

  PitchResult Detect(const AudioFrame& frame);

  /// NSDF through the detector's FFT path.
  std::vector<double> ComputeNsdf(const AudioFrame& frame, std::size_t max_lag);

  const PitchConfig& config() const { return config_; }
  std::size_t min_lag() const { return min_lag_; }
  std::size_t max_lag() const { return max_lag_; }

 private:
  void NsdfInto(const std::vector<double>& x, std::size_t max_lag,
                std::vector<double>& out);

  std::size_t frame_size_;
  int sample_rate_;
  PitchConfig config_;
  std::size_t min_lag_;
  std::size_t max_lag_;
  std::unique_ptr<RealFft> fft_;
  std::vector<double> nsdf_;
  std::vector<double> prefix_energy_;
};

PitchResult DetectPitch(const AudioFrame& frame, const PitchConfig& config = {});

}  // namespace chromatone

#endif  // CHROMATONE_PITCH_H_
