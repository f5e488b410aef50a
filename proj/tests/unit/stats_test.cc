#include "chromatone/stats.h"

#include <gtest/gtest.h>

#include "chromatone/engine.h"
#include "support/signals.h"

namespace chromatone {
namespace {

TEST(Stats, EmptyStreamReportsEmpty) {
  const auto s = StatsAccumulator{}.Finish();
  EXPECT_EQ(s.frames, 0u);
  EXPECT_FALSE(s.dominant_note_class.has_value());
  EXPECT_EQ(s.voiced_ratio(), 0.0);
  const auto text = FormatStats(s);
  EXPECT_NE(text.find("frames: 0"), std::string::npos);
  EXPECT_NE(text.find("fields: (empty)"), std::string::npos);
  EXPECT_NE(text.find("dominant_note_class: n/a"), std::string::npos);
}

TEST(Stats, A440IsDominatedByNoteClassNine) {
  Engine engine(EngineConfig{});
  StatsAccumulator acc;
  for (const auto& r : engine.Push(testing::Sine(440.0, 44100.0, 44100))) acc.Add(r);
  const auto s = acc.Finish();
  EXPECT_EQ(s.frames, 83u);
  EXPECT_EQ(s.pitched_frames, 83u);
  ASSERT_TRUE(s.dominant_note_class.has_value());
  EXPECT_EQ(*s.dominant_note_class, 9);
  EXPECT_GE(s.dominant_share, 0.95);
  EXPECT_NE(FormatStats(s).find("dominant_note_class: 9 (A)"), std::string::npos);
}

TEST(Stats, FieldSummaries) {
  StatsAccumulator acc;
  for (int i = 1; i <= 3; ++i) {
    FrameRecord r;
    r.frame_index = i;
    r.visual.scale = static_cast<float>(i);
    acc.Add(r);
  }
  const auto s = acc.Finish();
  const auto it = std::find_if(s.fields.begin(), s.fields.end(),
                               [](const FieldStats& f) { return f.name == "visual.scale"; });
  ASSERT_NE(it, s.fields.end());
  EXPECT_EQ(it->count, 3u);
  EXPECT_EQ(it->min, 1.0);
  EXPECT_EQ(it->mean, 2.0);
  EXPECT_EQ(it->max, 3.0);
  EXPECT_FALSE(s.dominant_note_class.has_value());
  EXPECT_NE(FormatStats(s).find("no pitch fields"), std::string::npos);
}

}  // namespace
}  // namespace chromatone
