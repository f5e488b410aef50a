#ifndef CHROMATONE_ENGINE_H_
#define CHROMATONE_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chromatone/config_file.h"
#include "chromatone/features.h"
#include "chromatone/framer.h"
#include "chromatone/mapping.h"
#include "chromatone/pitch.h"
#include "chromatone/protocol.h"

namespace chromatone {

struct EngineConfig {
  int sample_rate = 44100;
  std::size_t frame_size = 2048;
  std::size_t hop = 512;
  AnalysisSettings settings;
};

/// Throws Error(kConfiguration) for a frame size that is not a power of two
/// in [256, 8192], a hop outside [1, frame_size], or invalid sub-configs.
void ValidateEngineConfig(const EngineConfig& config);

/// Full-precision result for one analysis frame.
struct FrameAnalysis {
  FeatureVector features;
  PitchResult pitch;
  VisualFrame visual;
};

/// Per-frame analysis stages (features, pitch, mapping) without framing.
class AnalysisPipeline {
 public:
  explicit AnalysisPipeline(const EngineConfig& config);

  FrameAnalysis Process(const AudioFrame& frame);
  const MapperState& mapper_state() const { return mapper_; }

 private:
  MappingConfig mapping_;
  FeatureExtractor features_;
  PitchDetector pitch_;
  MapperState mapper_;
};

/// PCM in, frame records out. Single owner: one thread pushes at a time.
class Engine {
 public:
  explicit Engine(EngineConfig config);

  /// Records for every frame completed by `chunk`. A chunk containing a
  /// non-finite sample throws Error(kInput) and leaves the engine unchanged.
  std::vector<FrameRecord> Push(std::span<const double> chunk);
  std::vector<FrameRecord> Push(std::span<const float> chunk);

  std::vector<FrameAnalysis> PushDetailed(std::span<const double> chunk);

  SessionHeader MakeHeader(std::string created_utc) const;
  const EngineConfig& config() const { return config_; }
  std::uint64_t frames_emitted() const { return framer_.frames_emitted(); }
  std::size_t clamped_samples() const { return framer_.clamped(); }

 private:
  std::vector<FrameRecord> ProcessFrames(const std::vector<AudioFrame>& frames);

  EngineConfig config_;
  Framer framer_;
  AnalysisPipeline pipeline_;
};

/// Offline path: frames the whole buffer at once and runs a fresh pipeline.
std::vector<FrameRecord> AnalyzeAll(std::span<const double> samples,
                                    const EngineConfig& config);

/// floor((total - N) / H) + 1 for total >= N, else 0.
std::size_t ExpectedFrameCount(std::size_t total_samples, std::size_t frame_size,
                               std::size_t hop);

}  // namespace chromatone

#endif  // CHROMATONE_ENGINE_H_
