#include "chromatone/protocol.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "chromatone/error.h"

namespace chromatone {
namespace {

// Any finite float, including subnormals and signed zero.
float AnyFloat(std::mt19937_64& rng) {
  for (;;) {
    const float f = std::bit_cast<float>(static_cast<std::uint32_t>(rng()));
    if (std::isfinite(f)) return f;
  }
}

FrameRecord RandomRecord(std::mt19937_64& rng) {
  FrameRecord r;
  r.frame_index = rng() >> (rng() % 64);
  r.timestamp = AnyFloat(rng);
  auto& v = r.visual;
  v.voiced = rng() & 1;
  for (float* f : {&v.hue, &v.saturation, &v.lightness, &v.scale, &v.roughness,
                   &v.sharpness_glow, &v.granularity, &v.displacement}) {
    *f = AnyFloat(rng);
  }
  if (rng() & 1) {
    FeatureRecord f;
    for (float* x : {&f.energy, &f.rms, &f.spectral_centroid, &f.spectral_flatness,
                     &f.spectral_kurtosis, &f.loudness_total, &f.perceptual_spread,
                     &f.perceptual_sharpness}) {
      *x = AnyFloat(rng);
    }
    for (auto& x : f.specific_loudness) x = AnyFloat(rng);
    f.silent = rng() & 1;
    r.features = f;
  }
  if (rng() & 1) {
    PitchRecord p;
    p.voiced = rng() & 1;
    p.clarity = AnyFloat(rng);
    if (p.voiced) {
      p.frequency = AnyFloat(rng);
      p.midi_float = AnyFloat(rng);
      p.midi_note = static_cast<int>(rng() % 128);
      p.note_class = p.midi_note % 12;
      p.octave = p.midi_note / 12 - 1;
      p.cents = AnyFloat(rng);
    }
    r.pitch = p;
  }
  return r;
}

// Bitwise comparison so -0 vs +0 is caught.
void ExpectBitEqual(float a, float b) {
  EXPECT_EQ(std::bit_cast<std::uint32_t>(a), std::bit_cast<std::uint32_t>(b)) << a << " vs " << b;
}

TEST(Record, RandomRecordsRoundTripExactly) {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 1000; ++t) {
    const FrameRecord r = RandomRecord(rng);
    const std::string line = SerializeRecord(r);
    ASSERT_EQ(line.find('\n'), std::string::npos);
    const FrameRecord back = ParseRecord(line);
    ASSERT_EQ(back, r) << line;
    ExpectBitEqual(back.timestamp, r.timestamp);
    ExpectBitEqual(back.visual.hue, r.visual.hue);
  }
}

TEST(Record, NumbersUseAtMostNineSignificantDigits) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::string line = SerializeRecord(RandomRecord(rng));
    std::size_t i = 0;
    while (i < line.size()) {
      if (!(std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '-') ||
          (i > 0 && line[i - 1] != ':' && line[i - 1] != ',' && line[i - 1] != '[')) {
        ++i;
        continue;
      }
      // Count the mantissa digits of the number starting at i.
      std::size_t j = i, digits = 0;
      bool leading = true, in_exponent = false;
      while (j < line.size() && std::string_view("0123456789.-+e").find(line[j]) != std::string_view::npos) {
        if (line[j] == 'e') in_exponent = true;
        if (!in_exponent && std::isdigit(static_cast<unsigned char>(line[j]))) {
          if (line[j] != '0') leading = false;
          if (!leading) ++digits;
        }
        ++j;
      }
      const std::string_view number(line.data() + i, j - i);
      if (number.find_first_of(".e") != std::string_view::npos) {
        EXPECT_LE(digits, 9u) << number;
      }
      i = j;
    }
  }
}

TEST(Record, SerializationIsInjectiveOnFrameIndex) {
  FrameRecord r;
  std::set<std::string> lines;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    r.frame_index = i * 7919;
    lines.insert(SerializeRecord(r));
  }
  EXPECT_EQ(lines.size(), 1000u);
}

TEST(Record, MissingKeyIsSchemaErrorNamingPath) {
  FrameRecord r;
  std::string line = SerializeRecord(r);
  const auto pos = line.find("\"hue\":");
  ASSERT_NE(pos, std::string::npos);
  line.replace(pos, 6, "\"hew\":");
  try {
    ParseRecord(line);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_NE(std::string(e.what()).find("visual.hue"), std::string::npos) << e.what();
  }
}

TEST(Record, WrongTypeIsSchemaError) {
  std::string line = SerializeRecord(FrameRecord{});
  line.replace(line.find("\"frame_index\":0"), 15, "\"frame_index\":\"0\"");
  try {
    ParseRecord(line);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_NE(std::string(e.what()).find("frame_index"), std::string::npos);
  }
}

TEST(Record, TrailingGarbageReportsByteOffset) {
  const std::string line = SerializeRecord(FrameRecord{});
  try {
    ParseRecord(line + " xyz");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    ASSERT_TRUE(e.location().byte_offset.has_value());
    EXPECT_EQ(*e.location().byte_offset, line.size() + 1);
  }
  try {
    ParseRecord("{\"type\":\"frame\",");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_TRUE(e.location().byte_offset.has_value());
  }
}

TEST(Record, HeaderLineIsNotAFrame) {
  SessionHeader h;
  h.sample_rate = 44100;
  EXPECT_THROW(ParseRecord(SerializeHeader(h)), Error);
}

TEST(Header, RoundTripsIncludingSettings) {
  SessionHeader h;
  h.sample_rate = 48000;
  h.frame_size = 4096;
  h.hop_size = 1024;
  h.created_utc = FormatUtc(0);
  h.settings.mapping.alpha_texture = 0.125;
  h.settings.mapping.palette[11] = 359.5;
  h.settings.pitch.max_frequency = 3000.0;
  EXPECT_EQ(h.created_utc, "1970-01-01T00:00:00Z");
  EXPECT_EQ(ParseHeader(SerializeHeader(h)), h);
}

TEST(Header, UnknownVersionIsRejectedFirst) {
  try {
    ParseHeader("{\"protocol_version\":99,\"type\":\"header\"}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersion);
  }
}

TEST(Stream, Version99HeaderParsesNoFrames) {
  std::stringstream in;
  in << "{\"type\":\"header\",\"protocol_version\":99}\n" << SerializeRecord(FrameRecord{}) << "\n";
  try {
    StreamReader reader(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersion);
    EXPECT_EQ(e.location().line, 1u);
  }
}

std::string HeaderLine() {
  SessionHeader h;
  h.sample_rate = 44100;
  h.frame_size = 2048;
  h.hop_size = 512;
  h.created_utc = "2026-01-01T00:00:00Z";
  return SerializeHeader(h);
}

TEST(Stream, ReadsHeaderAndFramesInOrder) {
  std::stringstream in;
  in << HeaderLine() << "\n";
  for (std::uint64_t i : {0, 1, 5}) {
    FrameRecord r;
    r.frame_index = i;
    in << SerializeRecord(r) << "\n";
  }
  StreamReader reader(in);
  EXPECT_EQ(reader.header().frame_size, 2048u);
  std::vector<std::uint64_t> seen;
  while (auto r = reader.Next()) seen.push_back(r->frame_index);
  EXPECT_EQ(seen, (std::vector<std::uint64_t>{0, 1, 5}));
}

TEST(Stream, HeaderOnlyStreamIsEmpty) {
  std::stringstream in(HeaderLine() + "\n");
  StreamReader reader(in);
  EXPECT_FALSE(reader.Next().has_value());
}

TEST(Stream, EmptyInputHasNoHeader) {
  std::stringstream in;
  EXPECT_THROW(StreamReader reader(in), Error);
}

TEST(Stream, NonIncreasingIndexIsSequencingErrorWithLine) {
  std::stringstream in;
  FrameRecord r;
  in << HeaderLine() << "\n";
  r.frame_index = 3;
  in << SerializeRecord(r) << "\n";
  in << SerializeRecord(r) << "\n";
  StreamReader reader(in);
  reader.Next();
  try {
    reader.Next();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSequencing);
    EXPECT_EQ(e.location().line, 3u);
  }
}

TEST(Stream, CorruptLineCarriesLineNumberAndOffset) {
  std::stringstream in;
  in << HeaderLine() << "\n" << SerializeRecord(FrameRecord{}) << "\n" << "{\"type\":\"fr" << "\n";
  StreamReader reader(in);
  reader.Next();
  try {
    reader.Next();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.location().line, 3u);
    EXPECT_TRUE(e.location().byte_offset.has_value());
  }
}

TEST(Csv, RowsMatchHeaderWidth) {
  std::mt19937_64 rng(3);
  for (bool features : {false, true}) {
    for (bool pitch : {false, true}) {
      const auto header = CsvHeader(features, pitch);
      const auto columns = std::count(header.begin(), header.end(), ',');
      for (int t = 0; t < 20; ++t) {
        const auto row = CsvRow(RandomRecord(rng), features, pitch);
        EXPECT_EQ(std::count(row.begin(), row.end(), ','), columns);
      }
    }
  }
  EXPECT_EQ(CsvHeader(false, false).rfind("frame_index,timestamp,voiced,hue", 0), 0u);
}

}  // namespace
}  // namespace chromatone
