#include "chromatone/framer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "chromatone/error.h"

namespace chromatone {

Framer::Framer(std::size_t frame_size, std::size_t hop, int sample_rate)
    : frame_size_(frame_size), hop_(hop), sample_rate_(sample_rate) {
  if (!IsValidFrameSize(frame_size)) {
    throw Error(ErrorCode::kConfiguration,
                "frame size " + std::to_string(frame_size) +
                    " is not a power of two in [256, 8192]");
  }
  if (hop == 0 || hop > frame_size) {
    throw Error(ErrorCode::kConfiguration,
                "hop " + std::to_string(hop) + " must lie in [1, frame size]");
  }
  if (sample_rate <= 0) {
    throw Error(ErrorCode::kConfiguration, "sample rate must be positive");
  }
  pending_.reserve(2 * frame_size);
}

std::vector<AudioFrame> Framer::Push(std::span<const double> chunk) {
  return PushImpl(chunk);
}

std::vector<AudioFrame> Framer::Push(std::span<const float> chunk) {
  return PushImpl(chunk);
}

template <typename T>
std::vector<AudioFrame> Framer::PushImpl(std::span<const T> chunk) {
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    if (!std::isfinite(chunk[i])) {
      throw Error(ErrorCode::kInput,
                  "non-finite sample at chunk offset " + std::to_string(i));
    }
  }

  for (T s : chunk) {
    double v = static_cast<double>(s);
    if (v > 1.0 || v < -1.0) {
      v = std::clamp(v, -1.0, 1.0);
      ++clamped_;
    }
    pending_.push_back(v);
  }

  std::vector<AudioFrame> frames;
  std::size_t start = 0;
  while (pending_.size() - start >= frame_size_) {
    AudioFrame frame;
    frame.samples.assign(pending_.begin() + start, pending_.begin() + start + frame_size_);
    frame.sample_rate = sample_rate_;
    frame.index = next_index_;
    frame.timestamp = static_cast<double>(next_index_) * hop_ / sample_rate_;
    frames.push_back(std::move(frame));
    ++next_index_;
    start += hop_;
  }
  pending_.erase(pending_.begin(), pending_.begin() + start);
  return frames;
}

std::vector<AudioFrame> FrameAll(std::span<const double> samples, std::size_t frame_size,
                                 std::size_t hop, int sample_rate) {
  Framer framer(frame_size, hop, sample_rate);
  return framer.Push(samples);
}

}  // namespace chromatone
