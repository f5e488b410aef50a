#include "chromatone/engine.h"

#include <string>

#include "chromatone/error.h"

namespace chromatone {

void ValidateEngineConfig(const EngineConfig& c) {
  if (c.sample_rate <= 0) throw Error(ErrorCode::kConfiguration, "sample rate must be positive");
  if (!IsValidFrameSize(c.frame_size)) {
    throw Error(ErrorCode::kConfiguration, "frame size " + std::to_string(c.frame_size) +
                                               " is not a power of two in [256, 8192]");
  }
  if (c.hop == 0 || c.hop > c.frame_size) {
    throw Error(ErrorCode::kConfiguration,
                "hop " + std::to_string(c.hop) + " must lie in [1, frame size]");
  }
  ValidatePitchConfig(c.settings.pitch, c.sample_rate);
  ValidateMappingConfig(c.settings.mapping);
}

namespace {

const EngineConfig& Validated(const EngineConfig& c) {
  ValidateEngineConfig(c);
  return c;
}

EngineConfig Checked(EngineConfig c) {
  ValidateEngineConfig(c);
  return c;
}

}  // namespace

AnalysisPipeline::AnalysisPipeline(const EngineConfig& config)
    : mapping_(Validated(config).settings.mapping),
      features_(config.frame_size),
      pitch_(config.frame_size, config.sample_rate, config.settings.pitch) {}

FrameAnalysis AnalysisPipeline::Process(const AudioFrame& frame) {
  FrameAnalysis a{features_.Extract(frame), pitch_.Detect(frame), {}};
  a.visual = MapFrame(a.pitch, a.features, mapper_, mapping_);
  return a;
}

Engine::Engine(EngineConfig config)
    : config_(Checked(std::move(config))),
      framer_(config_.frame_size, config_.hop, config_.sample_rate),
      pipeline_(config_) {}

std::vector<FrameRecord> Engine::ProcessFrames(const std::vector<AudioFrame>& frames) {
  std::vector<FrameRecord> out;
  out.reserve(frames.size());
  for (const AudioFrame& frame : frames) {
    const FrameAnalysis a = pipeline_.Process(frame);
    out.push_back(MakeFrameRecord(a.visual, a.features, a.pitch));
  }
  return out;
}

std::vector<FrameRecord> Engine::Push(std::span<const double> chunk) {
  return ProcessFrames(framer_.Push(chunk));
}

std::vector<FrameRecord> Engine::Push(std::span<const float> chunk) {
  return ProcessFrames(framer_.Push(chunk));
}

std::vector<FrameAnalysis> Engine::PushDetailed(std::span<const double> chunk) {
  std::vector<FrameAnalysis> out;
  for (const AudioFrame& frame : framer_.Push(chunk)) out.push_back(pipeline_.Process(frame));
  return out;
}

SessionHeader Engine::MakeHeader(std::string created_utc) const {
  SessionHeader h;
  h.sample_rate = config_.sample_rate;
  h.frame_size = config_.frame_size;
  h.hop_size = config_.hop;
  h.created_utc = std::move(created_utc);
  h.settings = config_.settings;
  return h;
}

std::vector<FrameRecord> AnalyzeAll(std::span<const double> samples, const EngineConfig& config) {
  AnalysisPipeline pipeline(config);
  std::vector<FrameRecord> out;
  for (const AudioFrame& frame :
       FrameAll(samples, config.frame_size, config.hop, config.sample_rate)) {
    const FrameAnalysis a = pipeline.Process(frame);
    out.push_back(MakeFrameRecord(a.visual, a.features, a.pitch));
  }
  return out;
}

std::size_t ExpectedFrameCount(std::size_t total, std::size_t frame_size, std::size_t hop) {
  if (total < frame_size || hop == 0) return 0;
  return (total - frame_size) / hop + 1;
}

}  // namespace chromatone
