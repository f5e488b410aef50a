#ifndef CHROMATONE_FRAMER_H_
#define CHROMATONE_FRAMER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chromatone/audio_frame.h"

namespace chromatone {

/// Chops a continuous sample stream into overlapping frames of `frame_size`
/// samples advancing by `hop`. Single owner; not safe for concurrent pushes.
class Framer {
 public:
  Framer(std::size_t frame_size, std::size_t hop, int sample_rate);

  /// Returns every frame completed by `chunk`, in order. A chunk holding a
  /// non-finite sample is rejected whole with Error(kInput) and the framer is
  /// left untouched. Finite samples outside [-1, 1] are clamped and counted.
  std::vector<AudioFrame> Push(std::span<const double> chunk);
  std::vector<AudioFrame> Push(std::span<const float> chunk);

  std::size_t frame_size() const { return frame_size_; }
  std::size_t hop() const { return hop_; }
  int sample_rate() const { return sample_rate_; }
  std::uint64_t frames_emitted() const { return next_index_; }
  std::size_t pending() const { return pending_.size(); }
  std::size_t clamped() const { return clamped_; }

 private:
  template <typename T>
  std::vector<AudioFrame> PushImpl(std::span<const T> chunk);

  std::size_t frame_size_;
  std::size_t hop_;
  int sample_rate_;
  std::vector<double> pending_;
  std::uint64_t next_index_ = 0;
  std::size_t clamped_ = 0;
};

/// Frames a whole buffer in one shot (reference path for streaming tests).
std::vector<AudioFrame> FrameAll(std::span<const double> samples,
                                 std::size_t frame_size, std::size_t hop,
                                 int sample_rate);

}  // namespace chromatone

#endif  // CHROMATONE_FRAMER_H_
