#include "chromatone/protocol.h"

#include <istream>
#include <string>

#include "chromatone/error.h"
#include "json.hpp"
#include "number_format.h"

namespace chromatone {

namespace {

using internal::AppendNumber;
using json = nlohmann::json;

// Minimal JSON object writer; keeps key order fixed and numbers short.
class ObjectWriter {
 public:
  explicit ObjectWriter(std::string& out) : out_(out) { out_ += '{'; }
  ~ObjectWriter() { out_ += '}'; }

  template <typename T>
  void Number(std::string_view key, T value) {
    Key(key);
    AppendNumber(out_, value);
  }
  void Bool(std::string_view key, bool value) {
    Key(key);
    out_ += value ? "true" : "false";
  }
  void String(std::string_view key, std::string_view value) {
    Key(key);
    out_ += '"';
    for (char c : value) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += '"';
  }
  template <typename Range>
  void Array(std::string_view key, const Range& values) {
    Key(key);
    out_ += '[';
    bool first = true;
    for (const auto& v : values) {
      if (!first) out_ += ',';
      first = false;
      AppendNumber(out_, v);
    }
    out_ += ']';
  }
  std::string& Object(std::string_view key) {
    Key(key);
    return out_;
  }

 private:
  void Key(std::string_view key) {
    if (!first_) out_ += ',';
    first_ = false;
    out_ += '"';
    out_ += key;
    out_ += "\":";
  }

  std::string& out_;
  bool first_ = true;
};

std::string Join(std::string_view path, std::string_view key) {
  return path.empty() ? std::string(key) : std::string(path) + "." + std::string(key);
}

[[noreturn]] void SchemaError(const std::string& message) {
  throw Error(ErrorCode::kSchema, message);
}

const json& Require(const json& obj, std::string_view key, std::string_view path) {
  const auto it = obj.find(key);
  if (it == obj.end()) SchemaError("missing required key '" + Join(path, key) + "'");
  return *it;
}

const json& RequireObject(const json& obj, std::string_view key, std::string_view path) {
  const json& v = Require(obj, key, path);
  if (!v.is_object()) SchemaError("key '" + Join(path, key) + "' must be an object");
  return v;
}

double GetNumber(const json& obj, std::string_view key, std::string_view path) {
  const json& v = Require(obj, key, path);
  if (!v.is_number()) SchemaError("key '" + Join(path, key) + "' must be a number");
  return v.get<double>();
}

float GetFloat(const json& obj, std::string_view key, std::string_view path) {
  return static_cast<float>(GetNumber(obj, key, path));
}

bool GetBool(const json& obj, std::string_view key, std::string_view path) {
  const json& v = Require(obj, key, path);
  if (!v.is_boolean()) SchemaError("key '" + Join(path, key) + "' must be a boolean");
  return v.get<bool>();
}

std::int64_t GetInteger(const json& obj, std::string_view key, std::string_view path) {
  const json& v = Require(obj, key, path);
  if (!v.is_number_integer()) SchemaError("key '" + Join(path, key) + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t GetUnsigned(const json& obj, std::string_view key, std::string_view path) {
  const json& v = Require(obj, key, path);
  if (!v.is_number_unsigned()) {
    SchemaError("key '" + Join(path, key) + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

json ParseLine(std::string_view line) {
  try {
    json j = json::parse(line.begin(), line.end());
    if (!j.is_object()) SchemaError("line is not a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::kParse,
                "malformed line at byte offset " + std::to_string(offset) + ": " + e.what(),
                ErrorLocation{std::nullopt, offset});
  }
}

void CheckType(const json& j, std::string_view expected) {
  const json& type = Require(j, "type", "");
  if (!type.is_string()) SchemaError("key 'type' must be a string");
  if (type.get<std::string>() != expected) {
    SchemaError("expected a '" + std::string(expected) + "' line, got '" +
                type.get<std::string>() + "'");
  }
}

void WriteMapping(std::string& out, const MappingConfig& c) {
  ObjectWriter w(out);
  w.Array("palette", c.palette);
  w.Number("saturation_low", c.saturation_low);
  w.Number("saturation_high", c.saturation_high);
  w.Number("lightness", c.lightness);
  w.Number("scale_min", c.scale_min);
  w.Number("scale_max", c.scale_max);
  w.Number("energy_floor_per_sample", c.energy_floor_per_sample);
  w.Number("peak_decay", c.peak_decay);
  w.Number("centroid_hue_shift", c.centroid_hue_shift);
  w.Number("alpha_color", c.alpha_color);
  w.Number("alpha_scale", c.alpha_scale);
  w.Number("alpha_texture", c.alpha_texture);
  w.Number("roughness_gamma", c.roughness_gamma);
  w.Bool("roughness_inverted", c.roughness_inverted);
  w.Number("sharpness_reference", c.sharpness_reference);
  w.Number("kurtosis_reference", c.kurtosis_reference);
}

MappingConfig ReadMapping(const json& j) {
  constexpr std::string_view p = "mapping";
  MappingConfig c;
  const json& palette = Require(j, "palette", p);
  if (!palette.is_array() || palette.size() != c.palette.size()) {
    SchemaError("key 'mapping.palette' must be an array of 12 numbers");
  }
  for (std::size_t i = 0; i < c.palette.size(); ++i) {
    if (!palette[i].is_number()) SchemaError("key 'mapping.palette' must hold numbers");
    c.palette[i] = palette[i].get<double>();
  }
  c.saturation_low = GetNumber(j, "saturation_low", p);
  c.saturation_high = GetNumber(j, "saturation_high", p);
  c.lightness = GetNumber(j, "lightness", p);
  c.scale_min = GetNumber(j, "scale_min", p);
  c.scale_max = GetNumber(j, "scale_max", p);
  c.energy_floor_per_sample = GetNumber(j, "energy_floor_per_sample", p);
  c.peak_decay = GetNumber(j, "peak_decay", p);
  c.centroid_hue_shift = GetNumber(j, "centroid_hue_shift", p);
  c.alpha_color = GetNumber(j, "alpha_color", p);
  c.alpha_scale = GetNumber(j, "alpha_scale", p);
  c.alpha_texture = GetNumber(j, "alpha_texture", p);
  c.roughness_gamma = GetNumber(j, "roughness_gamma", p);
  c.roughness_inverted = GetBool(j, "roughness_inverted", p);
  c.sharpness_reference = GetNumber(j, "sharpness_reference", p);
  c.kurtosis_reference = GetNumber(j, "kurtosis_reference", p);
  return c;
}

void WritePitchConfig(std::string& out, const PitchConfig& c) {
  ObjectWriter w(out);
  w.Number("voicing_threshold", c.voicing_threshold);
  w.Number("peak_threshold", c.peak_threshold);
  w.Number("min_frequency", c.min_frequency);
  w.Number("max_frequency", c.max_frequency);
  w.Number("silence_rms", c.silence_rms);
}

PitchConfig ReadPitchConfig(const json& j) {
  constexpr std::string_view p = "pitch";
  PitchConfig c;
  c.voicing_threshold = GetNumber(j, "voicing_threshold", p);
  c.peak_threshold = GetNumber(j, "peak_threshold", p);
  c.min_frequency = GetNumber(j, "min_frequency", p);
  c.max_frequency = GetNumber(j, "max_frequency", p);
  c.silence_rms = GetNumber(j, "silence_rms", p);
  return c;
}

}  // namespace

VisualRecord ToRecord(const VisualFrame& v) {
  return {v.voiced,
          static_cast<float>(v.hue),
          static_cast<float>(v.saturation),
          static_cast<float>(v.lightness),
          static_cast<float>(v.scale),
          static_cast<float>(v.roughness),
          static_cast<float>(v.sharpness_glow),
          static_cast<float>(v.granularity),
          static_cast<float>(v.displacement)};
}

FeatureRecord ToRecord(const FeatureVector& f) {
  FeatureRecord r;
  r.energy = static_cast<float>(f.energy);
  r.rms = static_cast<float>(f.rms);
  r.spectral_centroid = static_cast<float>(f.spectral_centroid);
  r.spectral_flatness = static_cast<float>(f.spectral_flatness);
  r.spectral_kurtosis = static_cast<float>(f.spectral_kurtosis);
  for (std::size_t b = 0; b < kBarkBands; ++b) {
    r.specific_loudness[b] = static_cast<float>(f.specific_loudness[b]);
  }
  r.loudness_total = static_cast<float>(f.loudness_total);
  r.perceptual_spread = static_cast<float>(f.perceptual_spread);
  r.perceptual_sharpness = static_cast<float>(f.perceptual_sharpness);
  r.silent = f.silent;
  return r;
}

PitchRecord ToRecord(const PitchResult& p) {
  PitchRecord r;
  if (const auto* e = std::get_if<PitchEstimate>(&p)) {
    r.voiced = true;
    r.clarity = static_cast<float>(e->clarity);
    r.frequency = static_cast<float>(e->frequency);
    r.midi_float = static_cast<float>(e->note.midi_float);
    r.midi_note = e->note.midi_note;
    r.note_class = e->note.note_class;
    r.octave = e->note.octave;
    r.cents = static_cast<float>(e->note.cents);
  } else {
    r.clarity = static_cast<float>(std::get<Unvoiced>(p).best_clarity);
  }
  return r;
}

FrameRecord MakeFrameRecord(const VisualFrame& visual, const FeatureVector& features,
                            const PitchResult& pitch) {
  FrameRecord r;
  r.frame_index = visual.frame_index;
  r.timestamp = static_cast<float>(visual.timestamp);
  r.visual = ToRecord(visual);
  r.features = ToRecord(features);
  r.pitch = ToRecord(pitch);
  return r;
}

std::string SerializeHeader(const SessionHeader& h) {
  std::string out;
  {
    ObjectWriter w(out);
    w.String("type", "header");
    w.Number("protocol_version", h.protocol_version);
    w.Number("sample_rate", h.sample_rate);
    w.Number("frame_size", h.frame_size);
    w.Number("hop_size", h.hop_size);
    w.String("created_utc", h.created_utc);
    WriteMapping(w.Object("mapping"), h.settings.mapping);
    WritePitchConfig(w.Object("pitch"), h.settings.pitch);
  }
  return out;
}

SessionHeader ParseHeader(std::string_view line) {
  const json j = ParseLine(line);
  SessionHeader h;
  const std::int64_t version = GetInteger(j, "protocol_version", "");
  if (version != kProtocolVersion) {
    throw Error(ErrorCode::kVersion, "unsupported protocol version " + std::to_string(version) +
                                         " (this reader understands " +
                                         std::to_string(kProtocolVersion) + ")");
  }
  CheckType(j, "header");
  h.protocol_version = static_cast<int>(version);
  h.sample_rate = static_cast<int>(GetInteger(j, "sample_rate", ""));
  h.frame_size = static_cast<std::size_t>(GetUnsigned(j, "frame_size", ""));
  h.hop_size = static_cast<std::size_t>(GetUnsigned(j, "hop_size", ""));
  const json& created = Require(j, "created_utc", "");
  if (!created.is_string()) SchemaError("key 'created_utc' must be a string");
  h.created_utc = created.get<std::string>();
  h.settings.mapping = ReadMapping(RequireObject(j, "mapping", ""));
  h.settings.pitch = ReadPitchConfig(RequireObject(j, "pitch", ""));
  return h;
}

std::string SerializeRecord(const FrameRecord& r) {
  std::string out;
  out.reserve(r.features ? 640 : 256);
  {
    ObjectWriter w(out);
    w.String("type", "frame");
    w.Number("frame_index", r.frame_index);
    w.Number("timestamp", r.timestamp);
    {
      ObjectWriter v(w.Object("visual"));
      v.Bool("voiced", r.visual.voiced);
      v.Number("hue", r.visual.hue);
      v.Number("saturation", r.visual.saturation);
      v.Number("lightness", r.visual.lightness);
      v.Number("scale", r.visual.scale);
      v.Number("roughness", r.visual.roughness);
      v.Number("sharpness_glow", r.visual.sharpness_glow);
      v.Number("granularity", r.visual.granularity);
      v.Number("displacement", r.visual.displacement);
    }
    if (r.features) {
      const FeatureRecord& f = *r.features;
      ObjectWriter fw(w.Object("features"));
      fw.Number("energy", f.energy);
      fw.Number("rms", f.rms);
      fw.Number("spectral_centroid", f.spectral_centroid);
      fw.Number("spectral_flatness", f.spectral_flatness);
      fw.Number("spectral_kurtosis", f.spectral_kurtosis);
      fw.Array("specific_loudness", f.specific_loudness);
      fw.Number("loudness_total", f.loudness_total);
      fw.Number("perceptual_spread", f.perceptual_spread);
      fw.Number("perceptual_sharpness", f.perceptual_sharpness);
      fw.Bool("silent", f.silent);
    }
    if (r.pitch) {
      const PitchRecord& p = *r.pitch;
      ObjectWriter pw(w.Object("pitch"));
      pw.Bool("voiced", p.voiced);
      pw.Number("clarity", p.clarity);
      if (p.voiced) {
        pw.Number("frequency", p.frequency);
        pw.Number("midi_float", p.midi_float);
        pw.Number("midi_note", p.midi_note);
        pw.Number("note_class", p.note_class);
        pw.Number("octave", p.octave);
        pw.Number("cents", p.cents);
      }
    }
  }
  return out;
}

FrameRecord ParseRecord(std::string_view line) {
  const json j = ParseLine(line);
  CheckType(j, "frame");
  FrameRecord r;
  r.frame_index = GetUnsigned(j, "frame_index", "");
  r.timestamp = GetFloat(j, "timestamp", "");

  const json& v = RequireObject(j, "visual", "");
  r.visual.voiced = GetBool(v, "voiced", "visual");
  r.visual.hue = GetFloat(v, "hue", "visual");
  r.visual.saturation = GetFloat(v, "saturation", "visual");
  r.visual.lightness = GetFloat(v, "lightness", "visual");
  r.visual.scale = GetFloat(v, "scale", "visual");
  r.visual.roughness = GetFloat(v, "roughness", "visual");
  r.visual.sharpness_glow = GetFloat(v, "sharpness_glow", "visual");
  r.visual.granularity = GetFloat(v, "granularity", "visual");
  r.visual.displacement = GetFloat(v, "displacement", "visual");

  if (j.contains("features")) {
    constexpr std::string_view p = "features";
    const json& f = RequireObject(j, "features", "");
    FeatureRecord fr;
    fr.energy = GetFloat(f, "energy", p);
    fr.rms = GetFloat(f, "rms", p);
    fr.spectral_centroid = GetFloat(f, "spectral_centroid", p);
    fr.spectral_flatness = GetFloat(f, "spectral_flatness", p);
    fr.spectral_kurtosis = GetFloat(f, "spectral_kurtosis", p);
    const json& bands = Require(f, "specific_loudness", p);
    if (!bands.is_array() || bands.size() != kBarkBands) {
      SchemaError("key 'features.specific_loudness' must be an array of 24 numbers");
    }
    for (std::size_t b = 0; b < kBarkBands; ++b) {
      if (!bands[b].is_number()) {
        SchemaError("key 'features.specific_loudness' must hold numbers");
      }
      fr.specific_loudness[b] = static_cast<float>(bands[b].get<double>());
    }
    fr.loudness_total = GetFloat(f, "loudness_total", p);
    fr.perceptual_spread = GetFloat(f, "perceptual_spread", p);
    fr.perceptual_sharpness = GetFloat(f, "perceptual_sharpness", p);
    fr.silent = GetBool(f, "silent", p);
    r.features = fr;
  }

  if (j.contains("pitch")) {
    constexpr std::string_view p = "pitch";
    const json& pj = RequireObject(j, "pitch", "");
    PitchRecord pr;
    pr.voiced = GetBool(pj, "voiced", p);
    pr.clarity = GetFloat(pj, "clarity", p);
    if (pr.voiced) {
      pr.frequency = GetFloat(pj, "frequency", p);
      pr.midi_float = GetFloat(pj, "midi_float", p);
      pr.midi_note = static_cast<int>(GetInteger(pj, "midi_note", p));
      pr.note_class = static_cast<int>(GetInteger(pj, "note_class", p));
      pr.octave = static_cast<int>(GetInteger(pj, "octave", p));
      pr.cents = GetFloat(pj, "cents", p);
      if (pr.note_class < 0 || pr.note_class > 11) {
        SchemaError("key 'pitch.note_class' must lie in 0..11");
      }
    }
    r.pitch = pr;
  }
  return r;
}

StreamReader::StreamReader(std::istream& in) : in_(in) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (internal::Trim(line).empty()) continue;
    try {
      header_ = ParseHeader(line);
    } catch (const Error& e) {
      throw e.AtLine(line_);
    }
    return;
  }
  throw Error(ErrorCode::kSchema, "empty stream: missing session header",
              ErrorLocation{line_ + 1, std::nullopt});
}

std::optional<FrameRecord> StreamReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (internal::Trim(line).empty()) continue;
    FrameRecord r;
    try {
      r = ParseRecord(line);
    } catch (const Error& e) {
      throw e.AtLine(line_);
    }
    if (last_index_ && r.frame_index <= *last_index_) {
      throw Error(ErrorCode::kSequencing,
                  "frame_index " + std::to_string(r.frame_index) + " does not follow " +
                      std::to_string(*last_index_))
          .AtLine(line_);
    }
    last_index_ = r.frame_index;
    return r;
  }
  return std::nullopt;
}

std::string CsvHeader(bool with_features, bool with_pitch) {
  std::string out =
      "frame_index,timestamp,voiced,hue,saturation,lightness,scale,roughness,"
      "sharpness_glow,granularity,displacement";
  if (with_features) {
    out += ",energy,rms,spectral_centroid,spectral_flatness,spectral_kurtosis,"
           "loudness_total,perceptual_spread,perceptual_sharpness,silent";
    for (std::size_t b = 0; b < kBarkBands; ++b) out += ",bark_" + std::to_string(b);
  }
  if (with_pitch) out += ",pitch_voiced,clarity,frequency,midi_float,midi_note,note_class,octave,cents";
  return out;
}

std::string CsvRow(const FrameRecord& r, bool with_features, bool with_pitch) {
  std::string out;
  auto num = [&](auto v) {
    out += ',';
    AppendNumber(out, v);
  };
  AppendNumber(out, r.frame_index);
  num(r.timestamp);
  num(r.visual.voiced ? 1 : 0);
  num(r.visual.hue);
  num(r.visual.saturation);
  num(r.visual.lightness);
  num(r.visual.scale);
  num(r.visual.roughness);
  num(r.visual.sharpness_glow);
  num(r.visual.granularity);
  num(r.visual.displacement);
  if (with_features) {
    const FeatureRecord f = r.features.value_or(FeatureRecord{});
    num(f.energy);
    num(f.rms);
    num(f.spectral_centroid);
    num(f.spectral_flatness);
    num(f.spectral_kurtosis);
    num(f.loudness_total);
    num(f.perceptual_spread);
    num(f.perceptual_sharpness);
    num(f.silent ? 1 : 0);
    for (float b : f.specific_loudness) num(b);
  }
  if (with_pitch) {
    const PitchRecord p = r.pitch.value_or(PitchRecord{});
    num(p.voiced ? 1 : 0);
    num(p.clarity);
    num(p.frequency);
    num(p.midi_float);
    num(p.midi_note);
    num(p.note_class);
    num(p.octave);
    num(p.cents);
  }
  return out;
}

std::string FormatUtc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace chromatone
