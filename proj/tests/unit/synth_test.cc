#include "chromatone/synth.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chromatone/error.h"

namespace chromatone {
namespace {

TEST(Synth, SineMatchesClosedForm) {
  const auto s = Synthesize({WaveKind::kSine, 440.0, 1.0, 1.0, 44100, 0});
  ASSERT_EQ(s.size(), 44100u);
  EXPECT_EQ(s[0], 0.0);
  EXPECT_NEAR(s[25], std::sin(2.0 * std::numbers::pi * 440.0 * 25.0 / 44100.0), 1e-12);
}

TEST(Synth, SilenceIsAllZeros) {
  SynthParams p;
  p.kind = WaveKind::kSilence;
  p.duration = 0.1;
  p.sample_rate = 48000;
  const auto s = Synthesize(p);
  ASSERT_EQ(s.size(), 4800u);
  for (double v : s) EXPECT_EQ(v, 0.0);
}

TEST(Synth, WhiteNoiseIsDeterministicPerSeed) {
  SynthParams p{WaveKind::kWhiteNoise, 0.0, 1.0, 0.5, 44100, 7};
  const auto a = Synthesize(p);
  const auto b = Synthesize(p);
  EXPECT_EQ(a, b);
  p.seed = 8;
  EXPECT_NE(a, Synthesize(p));
  for (double v : a) EXPECT_LE(std::abs(v), 0.5);
}

TEST(Synth, SquareTakesOnlyTheTwoAmplitudeLevels) {
  const auto s = Synthesize({WaveKind::kSquare, 100.0, 0.05, 0.8, 44100, 0});
  int high = 0, low = 0;
  for (double v : s) {
    ASSERT_TRUE(v == 0.8 || v == -0.8) << v;
    (v > 0 ? high : low)++;
  }
  EXPECT_NEAR(static_cast<double>(high) / s.size(), 0.5, 0.02);
}

TEST(Synth, FrequencyAtOrAboveNyquistIsAliasing) {
  for (double f : {22050.0, 30000.0}) {
    try {
      Synthesize({WaveKind::kSine, f, 1.0, 1.0, 44100, 0});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kAliasing);
    }
  }
  // Noise ignores the frequency.
  EXPECT_NO_THROW(Synthesize({WaveKind::kWhiteNoise, 30000.0, 0.01, 1.0, 44100, 0}));
}

TEST(Synth, DomainErrors) {
  EXPECT_THROW(Synthesize({WaveKind::kSine, 440.0, 1.0, 1.5, 44100, 0}), Error);
  EXPECT_THROW(Synthesize({WaveKind::kSine, 440.0, -1.0, 1.0, 44100, 0}), Error);
  EXPECT_THROW(Synthesize({WaveKind::kSine, 0.0, 1.0, 1.0, 44100, 0}), Error);
  EXPECT_THROW(Synthesize({WaveKind::kSine, 440.0, 1.0, 1.0, 0, 0}), Error);
}

TEST(Synth, WaveNamesParse) {
  EXPECT_EQ(ParseWaveKind("sine"), WaveKind::kSine);
  EXPECT_EQ(ParseWaveKind("square"), WaveKind::kSquare);
  EXPECT_EQ(ParseWaveKind("white-noise"), WaveKind::kWhiteNoise);
  EXPECT_EQ(ParseWaveKind("silence"), WaveKind::kSilence);
  EXPECT_FALSE(ParseWaveKind("triangle").has_value());
  EXPECT_EQ(WaveKindName(WaveKind::kSquare), "square");
}

}  // namespace
}  // namespace chromatone
