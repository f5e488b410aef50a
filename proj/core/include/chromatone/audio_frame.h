#ifndef CHROMATONE_AUDIO_FRAME_H_
#define CHROMATONE_AUDIO_FRAME_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace chromatone {

inline constexpr std::size_t kMinFrameSize = 256;
inline constexpr std::size_t kMaxFrameSize = 8192;

/// Fixed-length block of normalized mono PCM; the unit every analysis stage
/// consumes.
struct AudioFrame {
  std::vector<double> samples;  // in [-1, 1], length is the frame size
  int sample_rate = 0;
  std::uint64_t index = 0;
  double timestamp = 0.0;  // index * hop / sample_rate

  std::size_t size() const { return samples.size(); }
  bool operator==(const AudioFrame&) const = default;
};

bool IsValidFrameSize(std::size_t n);

/// Throws Error(kDomain) if the frame breaks an AudioFrame invariant.
void ValidateFrame(const AudioFrame& frame);

/// Builds a frame from raw samples; used by tests and offline callers that
/// already hold a full block.
AudioFrame MakeFrame(std::vector<double> samples, int sample_rate,
                     std::uint64_t index = 0, double timestamp = 0.0);

}  // namespace chromatone

#endif  // CHROMATONE_AUDIO_FRAME_H_
