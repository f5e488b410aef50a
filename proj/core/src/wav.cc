#include "chromatone/wav.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "chromatone/error.h"

namespace chromatone {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// Tail shared by the KSDATAFORMAT_SUBTYPE_PCM / _IEEE_FLOAT GUIDs; the first
// two bytes carry the plain format tag.
constexpr std::array<std::uint8_t, 14> kSubformatTail = {
    0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80, 0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatChunk ParseFormat(std::span<const std::uint8_t> body) {
  if (body.size() < 16) {
    throw Error(ErrorCode::kContainer, "fmt chunk shorter than 16 bytes");
  }
  FormatChunk fmt;
  fmt.format = ReadU16(body, 0);
  fmt.channels = ReadU16(body, 2);
  fmt.sample_rate = ReadU32(body, 4);
  fmt.block_align = ReadU16(body, 12);
  fmt.bits = ReadU16(body, 14);
  if (fmt.format == kFormatExtensible) {
    if (body.size() < 40) {
      throw Error(ErrorCode::kContainer, "extensible fmt chunk shorter than 40 bytes");
    }
    auto guid = body.subspan(24, 16);
    if (!std::equal(kSubformatTail.begin(), kSubformatTail.end(), guid.begin() + 2)) {
      throw Error(ErrorCode::kUnsupportedFormat, "unknown extensible subformat GUID");
    }
    fmt.format = ReadU16(guid, 0);
  }
  return fmt;
}

void CheckFormat(const FormatChunk& fmt) {
  if (fmt.format != kFormatPcm && fmt.format != kFormatFloat) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported WAV codec tag 0x" + [&] {
                  char buf[8];
                  std::snprintf(buf, sizeof buf, "%04X", fmt.format);
                  return std::string(buf);
                }() + " (only PCM16 and float32 are read)");
  }
  if (fmt.format == kFormatPcm && fmt.bits != 16) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported PCM bit depth " + std::to_string(fmt.bits));
  }
  if (fmt.format == kFormatFloat && fmt.bits != 32) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported float bit depth " + std::to_string(fmt.bits));
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported channel count " + std::to_string(fmt.channels));
  }
  if (fmt.sample_rate == 0) {
    throw Error(ErrorCode::kContainer, "sample rate is zero");
  }
  if (fmt.block_align != fmt.channels * (fmt.bits / 8)) {
    throw Error(ErrorCode::kContainer,
                "block align " + std::to_string(fmt.block_align) +
                    " does not match channels * bytes per sample");
  }
}

}  // namespace

DecodedAudio DecodeWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !TagIs(bytes, 0, "RIFF") || !TagIs(bytes, 8, "WAVE")) {
    throw Error(ErrorCode::kContainer, "not a RIFF/WAVE container");
  }

  std::optional<FormatChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size() && !data) {
    const std::uint32_t size = ReadU32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (TagIs(bytes, pos, "data")) {
      if (!fmt) throw Error(ErrorCode::kContainer, "data chunk precedes fmt chunk");
      if (size > available) {
        throw Error(ErrorCode::kTruncated,
                    "data chunk truncated: expected " + std::to_string(size) +
                        " bytes, found " + std::to_string(available));
      }
      data = bytes.subspan(body, size);
      break;
    }
    if (size > available) {
      throw Error(ErrorCode::kContainer, "chunk extends past end of file");
    }
    if (TagIs(bytes, pos, "fmt ")) {
      fmt = ParseFormat(bytes.subspan(body, size));
      CheckFormat(*fmt);
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw Error(ErrorCode::kContainer, "missing fmt chunk");
  if (!data) throw Error(ErrorCode::kContainer, "missing data chunk");

  DecodedAudio out;
  out.sample_rate = static_cast<int>(fmt->sample_rate);
  out.channels = fmt->channels;
  const std::size_t frames = data->size() / fmt->block_align;
  out.samples.resize(frames);

  const std::size_t bytes_per_sample = fmt->bits / 8;
  for (std::size_t i = 0; i < frames; ++i) {
    double sum = 0.0;
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const std::size_t at = i * fmt->block_align + c * bytes_per_sample;
      double v;
      if (fmt->format == kFormatPcm) {
        v = static_cast<std::int16_t>(ReadU16(*data, at)) / 32768.0;
      } else {
        const float f = std::bit_cast<float>(ReadU32(*data, at));
        if (!std::isfinite(f)) {
          throw Error(ErrorCode::kContainer,
                      "non-finite float sample at frame " + std::to_string(i));
        }
        v = f;
      }
      sum += v;
    }
    double mono = sum / fmt->channels;
    if (mono > 1.0 || mono < -1.0) {
      mono = std::clamp(mono, -1.0, 1.0);
      ++out.clamped;
    }
    out.samples[i] = mono;
  }
  return out;
}

DecodedAudio ReadWavFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kContainer, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeWav(bytes);
}

namespace {

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void PutTag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

std::vector<std::uint8_t> EncodeWav(std::span<const double> samples, int sample_rate,
                                    WavSampleFormat format) {
  if (sample_rate <= 0) throw Error(ErrorCode::kDomain, "sample rate must be positive");
  const bool pcm = format == WavSampleFormat::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block = bits / 8;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * block);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_bytes);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, pcm ? kFormatPcm : kFormatFloat);
  PutU16(out, 1);
  PutU32(out, static_cast<std::uint32_t>(sample_rate));
  PutU32(out, static_cast<std::uint32_t>(sample_rate) * block);
  PutU16(out, block);
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, data_bytes);
  for (double s : samples) {
    if (pcm) {
      const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
      const auto q = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
      PutU16(out, static_cast<std::uint16_t>(q));
    } else {
      PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
    }
  }
  if (data_bytes & 1u) out.push_back(0);
  return out;
}

void WriteWavFile(const std::filesystem::path& path, std::span<const double> samples,
                  int sample_rate, WavSampleFormat format) {
  const auto bytes = EncodeWav(samples, sample_rate, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInput, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kInput, "write failed for " + path.string());
}

}  // namespace chromatone
