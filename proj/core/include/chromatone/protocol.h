#ifndef CHROMATONE_PROTOCOL_H_
#define CHROMATONE_PROTOCOL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "chromatone/config_file.h"
#include "chromatone/features.h"
#include "chromatone/mapping.h"
#include "chromatone/pitch.h"

namespace chromatone {

// Frame stream, protocol version 1
// ---------------------------------
// UTF-8 text, one JSON object per line. The first line is the session header:
//
//   {"type":"header","protocol_version":1,"sample_rate":44100,
//    "frame_size":2048,"hop_size":512,"created_utc":"2026-01-01T00:00:00Z",
//    "mapping":{...MappingConfig fields...},"pitch":{...PitchConfig fields...}}
//
// Every following line is a frame record:
//
//   {"type":"frame","frame_index":0,"timestamp":0,
//    "visual":{"voiced":true,"hue":..,"saturation":..,"lightness":..,
//              "scale":..,"roughness":..,"sharpness_glow":..,
//              "granularity":..,"displacement":..},
//    "features":{"energy":..,"rms":..,"spectral_centroid":..,
//                "spectral_flatness":..,"spectral_kurtosis":..,
//                "specific_loudness":[24 numbers],"loudness_total":..,
//                "perceptual_spread":..,"perceptual_sharpness":..,
//                "silent":false},
//    "pitch":{"voiced":true,"clarity":..,"frequency":..,"midi_float":..,
//             "midi_note":69,"note_class":9,"octave":4,"cents":..}}
//
// "features" and "pitch" are optional. An unvoiced pitch object carries only
// "voiced" and "clarity". Real values are float32 written in shortest
// round-trip form (at most 9 significant digits, '.' separator), so a record
// survives serialize -> parse bit-exactly.

inline constexpr int kProtocolVersion = 1;

struct SessionHeader {
  int protocol_version = kProtocolVersion;
  int sample_rate = 0;
  std::size_t frame_size = 0;
  std::size_t hop_size = 0;
  std::string created_utc;  // ISO-8601, e.g. 2026-01-01T00:00:00Z
  AnalysisSettings settings;

  bool operator==(const SessionHeader&) const = default;
};

struct VisualRecord {
  bool voiced = false;
  float hue = 0, saturation = 0, lightness = 0, scale = 0;
  float roughness = 0, sharpness_glow = 0, granularity = 0, displacement = 0;

  bool operator==(const VisualRecord&) const = default;
};

struct FeatureRecord {
  float energy = 0, rms = 0;
  float spectral_centroid = 0, spectral_flatness = 0, spectral_kurtosis = 0;
  std::array<float, kBarkBands> specific_loudness{};
  float loudness_total = 0, perceptual_spread = 0, perceptual_sharpness = 0;
  bool silent = false;

  bool operator==(const FeatureRecord&) const = default;
};

struct PitchRecord {
  bool voiced = false;
  float clarity = 0;
  // Meaningful only when voiced.
  float frequency = 0, midi_float = 0;
  int midi_note = 0, note_class = 0, octave = 0;
  float cents = 0;

  bool operator==(const PitchRecord&) const = default;
};

struct FrameRecord {
  std::uint64_t frame_index = 0;
  float timestamp = 0;
  VisualRecord visual;
  std::optional<FeatureRecord> features;
  std::optional<PitchRecord> pitch;

  bool operator==(const FrameRecord&) const = default;
};

VisualRecord ToRecord(const VisualFrame& v);
FeatureRecord ToRecord(const FeatureVector& f);
PitchRecord ToRecord(const PitchResult& p);
FrameRecord MakeFrameRecord(const VisualFrame& visual, const FeatureVector& features,
                            const PitchResult& pitch);

std::string SerializeHeader(const SessionHeader& header);
std::string SerializeRecord(const FrameRecord& record);

/// Parses a header line. The version is checked before any other field, so a
/// foreign stream fails with Error(kVersion) up front.
SessionHeader ParseHeader(std::string_view line);

/// Parses a frame line. Malformed text -> Error(kParse) with byte offset;
/// missing or mistyped key -> Error(kSchema) naming the dotted key path.
FrameRecord ParseRecord(std::string_view line);

/// Reads a whole stream: header first, then frames with strictly increasing
/// frame_index. Errors carry the 1-based line number.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in);

  const SessionHeader& header() const { return header_; }
  std::optional<FrameRecord> Next();
  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  SessionHeader header_;
  std::size_t line_ = 0;
  std::optional<std::uint64_t> last_index_;
};

/// Fixed CSV column order:
///   frame_index,timestamp,voiced,hue,saturation,lightness,scale,roughness,
///   sharpness_glow,granularity,displacement
/// then with features:
///   energy,rms,spectral_centroid,spectral_flatness,spectral_kurtosis,
///   loudness_total,perceptual_spread,perceptual_sharpness,silent,
///   bark_0 .. bark_23
/// then with pitch:
///   pitch_voiced,clarity,frequency,midi_float,midi_note,note_class,octave,cents
std::string CsvHeader(bool with_features, bool with_pitch);
std::string CsvRow(const FrameRecord& record, bool with_features, bool with_pitch);

/// Formats a UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string FormatUtc(std::time_t t);

}  // namespace chromatone

#endif  // CHROMATONE_PROTOCOL_H_
