#include "chromatone/framer.h"

#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <vector>

#include "chromatone/error.h"
#include "support/oracle.h"
#include "support/signals.h"

namespace chromatone {
namespace {

std::vector<double> Ramp(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i % 1000) / 1000.0;
  return x;
}

TEST(Framer, FirstFrameAfterNThenOnePerHop) {
  Framer f(2048, 512, 44100);
  const auto x = Ramp(2560);
  EXPECT_EQ(f.Push(std::span(x.data(), 2048)).size(), 1u);
  EXPECT_EQ(f.Push(std::span(x.data() + 2048, 512)).size(), 1u);
  EXPECT_EQ(f.frames_emitted(), 2u);
}

TEST(Framer, OneShortOfAFrameEmitsNothing) {
  Framer f(2048, 512, 44100);
  const auto x = Ramp(2047);
  EXPECT_TRUE(f.Push(x).empty());
  EXPECT_EQ(f.pending(), 2047u);
}

TEST(Framer, ChunksOfOneMatchSingleShot) {
  const auto x = Ramp(10000);
  Framer whole(2048, 512, 44100), ones(2048, 512, 44100);
  const auto expected = whole.Push(x);
  std::vector<AudioFrame> got;
  for (double v : x) {
    for (auto& fr : ones.Push(std::span(&v, 1))) got.push_back(std::move(fr));
  }
  EXPECT_EQ(got, expected);
}

// Property: random partitions yield exactly the frames obtained by index
// arithmetic on the concatenated stream.
TEST(Framer, AnyPartitionMatchesIndexArithmeticOracle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = std::size_t{256} << (rng() % 4);
    const std::size_t hop = 1 + rng() % n;
    const std::size_t total = rng() % (5 * n);
    const auto x = testing::Noise(rng, total);
    const auto oracle = oracle::SliceFrames(x, n, hop);

    Framer f(n, hop, 16000);
    std::vector<AudioFrame> got;
    std::size_t pos = 0;
    while (pos < total) {
      const std::size_t len = std::min<std::size_t>(total - pos, rng() % (2 * n));
      for (auto& fr : f.Push(std::span(x.data() + pos, len))) got.push_back(std::move(fr));
      pos += len;
    }
    ASSERT_EQ(got.size(), oracle.size()) << "n=" << n << " hop=" << hop << " total=" << total;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].samples, oracle[i]);
      EXPECT_EQ(got[i].index, i);
      EXPECT_EQ(got[i].sample_rate, 16000);
      EXPECT_DOUBLE_EQ(got[i].timestamp, static_cast<double>(i * hop) / 16000.0);
    }
  }
}

TEST(Framer, ReconstructionFromFirstFrameAndHopPrefixes) {
  std::mt19937_64 rng(3);
  const auto x = testing::Noise(rng, 9000);
  const auto frames = FrameAll(x, 1024, 256, 44100);
  std::vector<double> rebuilt(frames[0].samples.begin(), frames[0].samples.end());
  for (std::size_t i = 1; i < frames.size(); ++i) {
    rebuilt.insert(rebuilt.end(), frames[i].samples.end() - 256, frames[i].samples.end());
  }
  ASSERT_LE(rebuilt.size(), x.size());
  EXPECT_TRUE(std::equal(rebuilt.begin(), rebuilt.end(), x.begin()));
  EXPECT_EQ(frames.size(), (9000 - 1024) / 256 + 1);
}

TEST(Framer, NonFiniteChunkIsRejectedWithoutStateChange) {
  Framer f(256, 64, 8000);
  const auto x = Ramp(300);
  f.Push(x);
  const auto pending = f.pending();
  const auto emitted = f.frames_emitted();
  std::vector<double> bad(500, 0.1);
  bad[400] = std::numeric_limits<double>::quiet_NaN();
  try {
    f.Push(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
  }
  bad[400] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(f.Push(bad), Error);
  EXPECT_EQ(f.pending(), pending);
  EXPECT_EQ(f.frames_emitted(), emitted);

  Framer clean(256, 64, 8000);
  clean.Push(x);
  const std::vector<double> more(500, 0.1);
  EXPECT_EQ(f.Push(more), clean.Push(more));
}

TEST(Framer, OutOfRangeSamplesAreClampedAndCounted) {
  Framer f(256, 256, 8000);
  std::vector<float> x(256, 0.0f);
  x[0] = 1.5f;
  x[1] = -3.0f;
  const auto frames = f.Push(std::span<const float>(x));
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].samples[0], 1.0);
  EXPECT_EQ(frames[0].samples[1], -1.0);
  EXPECT_EQ(f.clamped(), 2u);
}

TEST(Framer, InvalidConfigurations) {
  EXPECT_THROW(Framer(1000, 256, 44100), Error);
  EXPECT_THROW(Framer(128, 64, 44100), Error);
  EXPECT_THROW(Framer(16384, 64, 44100), Error);
  EXPECT_THROW(Framer(1024, 0, 44100), Error);
  EXPECT_THROW(Framer(1024, 2048, 44100), Error);
  EXPECT_THROW(Framer(1024, 256, 0), Error);
}

TEST(AudioFrame, Validation) {
  EXPECT_TRUE(IsValidFrameSize(256));
  EXPECT_TRUE(IsValidFrameSize(8192));
  EXPECT_FALSE(IsValidFrameSize(512 + 1));
  EXPECT_FALSE(IsValidFrameSize(16384));
  EXPECT_THROW(MakeFrame(std::vector<double>(300, 0.0), 44100), Error);
  EXPECT_THROW(MakeFrame(std::vector<double>(256, 2.0), 44100), Error);
  EXPECT_NO_THROW(MakeFrame(std::vector<double>(256, 1.0), 44100));
}

}  // namespace
}  // namespace chromatone
