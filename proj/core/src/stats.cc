#include "chromatone/stats.h"

#include <algorithm>
#include <cstdio>

namespace chromatone {

namespace {

// Slot order is the report order.
constexpr std::string_view kVisualFields[] = {
    "visual.hue",       "visual.saturation",     "visual.lightness",
    "visual.scale",     "visual.roughness",      "visual.sharpness_glow",
    "visual.granularity", "visual.displacement"};
constexpr std::string_view kFeatureFields[] = {
    "features.energy",           "features.rms",
    "features.spectral_centroid", "features.spectral_flatness",
    "features.spectral_kurtosis", "features.loudness_total",
    "features.perceptual_spread", "features.perceptual_sharpness"};
constexpr std::string_view kPitchFields[] = {"pitch.clarity", "pitch.frequency",
                                             "pitch.cents"};

constexpr std::size_t kVisualSlots = std::size(kVisualFields);
constexpr std::size_t kFeatureSlots = std::size(kFeatureFields);
constexpr std::size_t kSlots = kVisualSlots + kFeatureSlots + std::size(kPitchFields);

std::string_view SlotName(std::size_t slot) {
  if (slot < kVisualSlots) return kVisualFields[slot];
  if (slot < kVisualSlots + kFeatureSlots) return kFeatureFields[slot - kVisualSlots];
  return kPitchFields[slot - kVisualSlots - kFeatureSlots];
}

}  // namespace

void StatsAccumulator::Observe(std::size_t slot, double value) {
  if (running_.empty()) running_.resize(kSlots);
  Running& r = running_[slot];
  if (r.count == 0) {
    r.min = r.max = value;
  } else {
    r.min = std::min(r.min, value);
    r.max = std::max(r.max, value);
  }
  r.sum += value;
  ++r.count;
}

void StatsAccumulator::Add(const FrameRecord& rec) {
  ++frames_;
  if (rec.visual.voiced) ++voiced_;
  const VisualRecord& v = rec.visual;
  const float visual[] = {v.hue,       v.saturation,     v.lightness,   v.scale,
                          v.roughness, v.sharpness_glow, v.granularity, v.displacement};
  for (std::size_t i = 0; i < kVisualSlots; ++i) Observe(i, visual[i]);

  if (rec.features) {
    const FeatureRecord& f = *rec.features;
    const float features[] = {f.energy,            f.rms,
                              f.spectral_centroid, f.spectral_flatness,
                              f.spectral_kurtosis, f.loudness_total,
                              f.perceptual_spread, f.perceptual_sharpness};
    for (std::size_t i = 0; i < kFeatureSlots; ++i) Observe(kVisualSlots + i, features[i]);
  }
  if (rec.pitch) {
    ++pitched_;
    const std::size_t base = kVisualSlots + kFeatureSlots;
    Observe(base, rec.pitch->clarity);
    if (rec.pitch->voiced) {
      Observe(base + 1, rec.pitch->frequency);
      Observe(base + 2, rec.pitch->cents);
      ++histogram_[static_cast<std::size_t>(rec.pitch->note_class)];
    }
  }
}

StreamStats StatsAccumulator::Finish() const {
  StreamStats s;
  s.frames = frames_;
  s.voiced_frames = voiced_;
  s.pitched_frames = pitched_;
  s.note_histogram = histogram_;
  for (std::size_t slot = 0; slot < running_.size(); ++slot) {
    const Running& r = running_[slot];
    if (r.count == 0) continue;
    s.fields.push_back({std::string(SlotName(slot)), r.count, r.min,
                        r.sum / static_cast<double>(r.count), r.max});
  }
  std::size_t total = 0;
  for (std::size_t c : histogram_) total += c;
  if (total > 0) {
    const auto it = std::max_element(histogram_.begin(), histogram_.end());
    s.dominant_note_class = static_cast<int>(it - histogram_.begin());
    s.dominant_share = static_cast<double>(*it) / static_cast<double>(total);
  }
  return s;
}

std::string FormatStats(const StreamStats& s) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "frames: %zu\n", s.frames);
  out += buf;
  if (s.frames == 0) {
    out += "voiced_ratio: n/a\nfields: (empty)\nnote_histogram: (empty)\n";
    out += "dominant_note_class: n/a\n";
    return out;
  }
  std::snprintf(buf, sizeof buf, "voiced_ratio: %.4f\n", s.voiced_ratio());
  out += buf;
  out += "fields:\n";
  for (const FieldStats& f : s.fields) {
    std::snprintf(buf, sizeof buf, "  %-30s count=%-8zu min=%-14.6g mean=%-14.6g max=%.6g\n",
                  f.name.c_str(), f.count, f.min, f.mean, f.max);
    out += buf;
  }
  if (!s.dominant_note_class) {
    out += s.pitched_frames == 0 ? "note_histogram: n/a (stream has no pitch fields)\n"
                                 : "note_histogram: (no voiced pitch frames)\n";
    out += "dominant_note_class: n/a\n";
    return out;
  }
  out += "note_histogram:\n";
  for (int nc = 0; nc < 12; ++nc) {
    std::snprintf(buf, sizeof buf, "  %-2s (%2d): %zu\n", NoteName(nc).data(), nc,
                  s.note_histogram[static_cast<std::size_t>(nc)]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "dominant_note_class: %d (%s) share=%.4f\n",
                *s.dominant_note_class, NoteName(*s.dominant_note_class).data(),
                s.dominant_share);
  out += buf;
  return out;
}

}  // namespace chromatone
