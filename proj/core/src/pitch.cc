#include "chromatone/pitch.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "chromatone/error.h"
#include "chromatone/features.h"
#include "fft.h"

namespace chromatone {

namespace {

// Below this fraction of the zero-lag normalizer the FFT round-off in the
// autocorrelation dominates the ratio, so the lag reports 0.
constexpr double kNormalizerFloor = 1e-10;

constexpr double kLowestFrequency = 10.0;
constexpr double kHighestFrequency = 12000.0;

constexpr std::array<std::string_view, 12> kNoteNames = {
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};

// NSDF for lags 0..max_lag using a zero-padded FFT autocorrelation (fft must
// hold 2 * x.size() points) and prefix sums of x^2 for the normalizer.
void NsdfViaFft(RealFft& fft, std::vector<double>& prefix, const std::vector<double>& x,
                std::size_t max_lag, std::vector<double>& out) {
  const std::size_t n = x.size();
  out.assign(max_lag + 1, 0.0);

  prefix.resize(n + 1);
  prefix[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i] * x[i];
  const double total = prefix[n];
  if (total <= 0.0) return;

  auto real = fft.real();
  std::copy(x.begin(), x.end(), real.begin());
  std::fill(real.begin() + static_cast<std::ptrdiff_t>(n), real.end(), 0.0);
  fft.Forward();
  for (auto& b : fft.bins()) b = std::norm(b);
  fft.Inverse();

  const double scale = 1.0 / static_cast<double>(fft.size());
  const double floor = kNormalizerFloor * 2.0 * total;
  out[0] = 1.0;
  for (std::size_t tau = 1; tau <= max_lag; ++tau) {
    const double m = prefix[n - tau] + (total - prefix[tau]);
    if (m <= floor) continue;
    const double r = real[tau] * scale;
    out[tau] = std::clamp(2.0 * r / m, -1.0, 1.0);
  }
}

// Highest point of each positive lobe of the NSDF, skipping the lobe around
// lag zero.
std::vector<std::size_t> KeyMaxima(const std::vector<double>& nsdf) {
  std::vector<std::size_t> peaks;
  const std::size_t len = nsdf.size();
  if (len < 3) return peaks;

  std::size_t pos = 0;
  while (pos < len - 1 && nsdf[pos] > 0.0) ++pos;
  while (pos < len - 1 && nsdf[pos] <= 0.0) ++pos;
  if (pos == 0) pos = 1;

  std::size_t current = 0;
  while (pos < len - 1) {
    if (nsdf[pos] > nsdf[pos - 1] && nsdf[pos] >= nsdf[pos + 1]) {
      if (current == 0 || nsdf[pos] > nsdf[current]) current = pos;
    }
    ++pos;
    if (pos < len - 1 && nsdf[pos] <= 0.0) {
      if (current != 0) {
        peaks.push_back(current);
        current = 0;
      }
      while (pos < len - 1 && nsdf[pos] <= 0.0) ++pos;
    }
  }
  if (current != 0) peaks.push_back(current);
  return peaks;
}

}  // namespace

void ValidatePitchConfig(const PitchConfig& c, int sample_rate) {
  if (sample_rate <= 0) throw Error(ErrorCode::kConfiguration, "sample rate must be positive");
  if (!(c.min_frequency > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "min_frequency must be positive");
  }
  if (!(c.max_frequency < sample_rate / 2.0)) {
    throw Error(ErrorCode::kConfiguration,
                "max_frequency " + std::to_string(c.max_frequency) + " Hz is not below Nyquist");
  }
  if (!(c.min_frequency < c.max_frequency)) {
    throw Error(ErrorCode::kConfiguration, "min_frequency must be below max_frequency");
  }
  if (c.min_frequency < kLowestFrequency || c.max_frequency > kHighestFrequency) {
    throw Error(ErrorCode::kConfiguration, "pitch search range must lie within [10, 12000] Hz");
  }
  if (!(c.voicing_threshold > 0.0 && c.voicing_threshold <= 1.0)) {
    throw Error(ErrorCode::kConfiguration, "voicing_threshold must lie in (0, 1]");
  }
  if (!(c.peak_threshold > 0.0 && c.peak_threshold <= 1.0)) {
    throw Error(ErrorCode::kConfiguration, "peak_threshold must lie in (0, 1]");
  }
  if (!(c.silence_rms >= 0.0)) {
    throw Error(ErrorCode::kConfiguration, "silence_rms must be non-negative");
  }
}

NoteQuantization Quantize(double frequency) {
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw Error(ErrorCode::kDomain, "frequency must be positive and finite");
  }
  NoteQuantization q;
  q.midi_float = 69.0 + 12.0 * std::log2(frequency / 440.0);
  double note = std::floor(q.midi_float + 0.5);
  if (100.0 * (q.midi_float - note) < -50.0) note -= 1.0;
  if (note < 0.0 || note > 127.0) {
    throw Error(ErrorCode::kDomain,
                "frequency " + std::to_string(frequency) + " Hz is outside the MIDI note range");
  }
  q.midi_note = static_cast<int>(note);
  q.cents = 100.0 * (q.midi_float - note);
  q.note_class = q.midi_note % 12;
  q.octave = q.midi_note / 12 - 1;
  return q;
}

std::string_view NoteName(int note_class) {
  return kNoteNames[static_cast<std::size_t>(((note_class % 12) + 12) % 12)];
}

std::uint64_t FrameIndexOf(const PitchResult& r) {
  return std::visit([](const auto& v) { return v.frame_index; }, r);
}

double ClarityOf(const PitchResult& r) {
  if (const auto* e = std::get_if<PitchEstimate>(&r)) return e->clarity;
  return std::get<Unvoiced>(r).best_clarity;
}

std::vector<double> Nsdf(const AudioFrame& frame, std::size_t max_lag) {
  ValidateFrame(frame);
  if (max_lag >= frame.size()) {
    throw Error(ErrorCode::kDomain, "max_lag must be below the frame size");
  }
  RealFft fft(2 * frame.size());
  std::vector<double> prefix;
  std::vector<double> out;
  NsdfViaFft(fft, prefix, frame.samples, max_lag, out);
  return out;
}

PitchDetector::PitchDetector(std::size_t frame_size, int sample_rate, PitchConfig config)
    : frame_size_(frame_size), sample_rate_(sample_rate), config_(config) {
  if (!IsValidFrameSize(frame_size)) {
    throw Error(ErrorCode::kConfiguration,
                "frame size " + std::to_string(frame_size) + " is not a power of two in [256, 8192]");
  }
  ValidatePitchConfig(config_, sample_rate);
  min_lag_ = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sample_rate / config_.max_frequency)));
  max_lag_ = std::min<std::size_t>(
      frame_size - 2, static_cast<std::size_t>(std::ceil(sample_rate / config_.min_frequency)));
  if (min_lag_ >= max_lag_) {
    throw Error(ErrorCode::kConfiguration, "pitch search range is empty for this frame size");
  }
  fft_ = std::make_unique<RealFft>(2 * frame_size);
}

PitchDetector::~PitchDetector() = default;
PitchDetector::PitchDetector(PitchDetector&&) noexcept = default;
PitchDetector& PitchDetector::operator=(PitchDetector&&) noexcept = default;

void PitchDetector::NsdfInto(const std::vector<double>& x, std::size_t max_lag,
                             std::vector<double>& out) {
  NsdfViaFft(*fft_, prefix_energy_, x, max_lag, out);
}

std::vector<double> PitchDetector::ComputeNsdf(const AudioFrame& frame, std::size_t max_lag) {
  ValidateFrame(frame);
  if (frame.size() != frame_size_) {
    throw Error(ErrorCode::kDomain, "frame size does not match detector");
  }
  if (max_lag >= frame_size_) {
    throw Error(ErrorCode::kDomain, "max_lag must be below the frame size");
  }
  std::vector<double> out;
  NsdfInto(frame.samples, max_lag, out);
  return out;
}

PitchResult PitchDetector::Detect(const AudioFrame& frame) {
  ValidateFrame(frame);
  if (frame.size() != frame_size_) {
    throw Error(ErrorCode::kDomain, "frame size does not match detector");
  }
  if (frame.sample_rate != sample_rate_) {
    throw Error(ErrorCode::kDomain, "frame sample rate does not match detector");
  }
  const Unvoiced silent{0.0, frame.index};
  if (EnergyAndRms(frame.samples).rms < config_.silence_rms) return silent;

  NsdfInto(frame.samples, max_lag_ + 1, nsdf_);

  std::vector<std::size_t> peaks = KeyMaxima(nsdf_);
  std::erase_if(peaks, [&](std::size_t t) { return t < min_lag_ || t > max_lag_; });
  if (peaks.empty()) return silent;

  double highest = 0.0;
  for (std::size_t t : peaks) highest = std::max(highest, nsdf_[t]);
  const double cutoff = config_.peak_threshold * highest;
  const std::size_t tau = *std::find_if(peaks.begin(), peaks.end(),
                                        [&](std::size_t t) { return nsdf_[t] >= cutoff; });

  // Parabola through the three samples around the chosen peak.
  const double a = nsdf_[tau - 1];
  const double b = nsdf_[tau];
  const double c = nsdf_[tau + 1];
  const double curvature = a - 2.0 * b + c;
  double shift = 0.0;
  double peak = b;
  if (curvature < 0.0) {
    shift = std::clamp(0.5 * (a - c) / curvature, -0.5, 0.5);
    peak = b - 0.25 * (a - c) * shift;
  }
  const double clarity = std::clamp(peak, 0.0, 1.0);
  if (clarity < config_.voicing_threshold) return Unvoiced{clarity, frame.index};

  PitchEstimate est;
  est.frequency = sample_rate_ / (static_cast<double>(tau) + shift);
  est.clarity = clarity;
  est.note = Quantize(est.frequency);
  est.frame_index = frame.index;
  return est;
}

PitchResult DetectPitch(const AudioFrame& frame, const PitchConfig& config) {
  ValidateFrame(frame);
  PitchDetector detector(frame.size(), frame.sample_rate, config);
  return detector.Detect(frame);
}

}  // namespace chromatone
