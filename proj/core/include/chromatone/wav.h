#ifndef CHROMATONE_WAV_H_
#define CHROMATONE_WAV_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace chromatone {

enum class WavSampleFormat { kPcm16, kFloat32 };

struct DecodedAudio {
  int sample_rate = 0;
  int channels = 0;             // channel count in the file
  std::vector<double> samples;  // mono, mean downmix of all channels
  std::size_t clamped = 0;      // samples pulled back into [-1, 1]
};

/// Decodes a RIFF/WAVE container holding 16-bit PCM or 32-bit float audio in
/// one or two channels. Throws Error with kContainer, kUnsupportedFormat or
/// kTruncated.
DecodedAudio DecodeWav(std::span<const std::uint8_t> bytes);
DecodedAudio ReadWavFile(const std::filesystem::path& path);

/// Mono encoder used for fixtures. PCM16 rounds s * 32768 and saturates.
std::vector<std::uint8_t> EncodeWav(std::span<const double> samples,
                                    int sample_rate,
                                    WavSampleFormat format = WavSampleFormat::kPcm16);
void WriteWavFile(const std::filesystem::path& path,
                  std::span<const double> samples, int sample_rate,
                  WavSampleFormat format = WavSampleFormat::kPcm16);

}  // namespace chromatone

#endif  // CHROMATONE_WAV_H_
