#ifndef CHROMATONE_STATS_H_
#define CHROMATONE_STATS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chromatone/protocol.h"

namespace chromatone {

struct FieldStats {
  std::string name;
  std::size_t count = 0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct StreamStats {
  std::size_t frames = 0;
  std::size_t voiced_frames = 0;     // visual.voiced
  std::size_t pitched_frames = 0;    // frames carrying a pitch object
  std::vector<FieldStats> fields;    // only fields seen at least once
  std::array<std::size_t, 12> note_histogram{};
  std::optional<int> dominant_note_class;
  double dominant_share = 0.0;  // of voiced pitch frames

  double voiced_ratio() const {
    return frames == 0 ? 0.0 : static_cast<double>(voiced_frames) / frames;
  }
};

class StatsAccumulator {
 public:
  void Add(const FrameRecord& record);
  StreamStats Finish() const;

 private:
  struct Running {
    std::size_t count = 0;
    double min = 0.0, max = 0.0, sum = 0.0;
  };
  void Observe(std::size_t slot, double value);

  std::size_t frames_ = 0;
  std::size_t voiced_ = 0;
  std::size_t pitched_ = 0;
  std::vector<Running> running_;
  std::array<std::size_t, 12> histogram_{};
};

/// Human-readable report printed by `chromatone stats`.
std::string FormatStats(const StreamStats& stats);

}  // namespace chromatone

#endif  // CHROMATONE_STATS_H_
