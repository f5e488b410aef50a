#include "chromatone/audio_frame.h"

#include <bit>
#include <cmath>
#include <string>

#include "chromatone/error.h"

namespace chromatone {

bool IsValidFrameSize(std::size_t n) {
  return std::has_single_bit(n) && n >= kMinFrameSize && n <= kMaxFrameSize;
}

void ValidateFrame(const AudioFrame& frame) {
  if (!IsValidFrameSize(frame.size())) {
    throw Error(ErrorCode::kDomain,
                "frame size " + std::to_string(frame.size()) +
                    " is not a power of two in [256, 8192]");
  }
  if (frame.sample_rate <= 0) {
    throw Error(ErrorCode::kDomain, "sample rate must be positive");
  }
  for (double s : frame.samples) {
    if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
      throw Error(ErrorCode::kDomain, "frame sample outside [-1, 1]");
    }
  }
}

AudioFrame MakeFrame(std::vector<double> samples, int sample_rate,
                     std::uint64_t index, double timestamp) {
  AudioFrame frame{std::move(samples), sample_rate, index, timestamp};
  ValidateFrame(frame);
  return frame;
}

}  // namespace chromatone
