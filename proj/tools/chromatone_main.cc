// chromatone: offline analysis front end.
//
//   chromatone synth   --wave sine --freq 440 --dur 1 --out a440.wav
//   chromatone analyze a440.wav --out a440.jsonl --features --pitch
//   chromatone stats   a440.jsonl
//
// Exit codes: 0 success, 1 input/data error, 2 usage error.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chromatone/config_file.h"
#include "chromatone/engine.h"
#include "chromatone/error.h"
#include "chromatone/protocol.h"
#include "chromatone/stats.h"
#include "chromatone/synth.h"
#include "chromatone/wav.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

constexpr std::size_t kChunkSamples = 4096;

struct AnalyzeOptions {
  std::string input;
  std::string output;
  std::string config;
  std::size_t frame_size = 2048;
  std::size_t hop = 512;
  bool features = false;
  bool pitch = false;
  bool csv = false;
};

struct SynthOptions {
  std::string wave = "sine";
  double frequency = 440.0;
  double duration = 1.0;
  double amplitude = 1.0;
  int sample_rate = 44100;
  std::uint64_t seed = 0;
  std::string format = "pcm16";
  std::string output;
};

struct StatsOptions {
  std::string input;
};

// Header timestamp; SOURCE_DATE_EPOCH pins it for reproducible output.
std::string CreationTime() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') return chromatone::FormatUtc(static_cast<std::time_t>(v));
  }
  return chromatone::FormatUtc(std::time(nullptr));
}

std::string Describe(const chromatone::Error& e) {
  return std::string(chromatone::ErrorCodeName(e.code())) + ": " + e.what();
}

int RunAnalyze(const AnalyzeOptions& opt) {
  chromatone::AnalysisSettings settings;
  if (!opt.config.empty()) {
    try {
      settings = chromatone::LoadSettingsFile(opt.config);
    } catch (const chromatone::Error& e) {
      std::cerr << "chromatone analyze: " << Describe(e) << "\n";
      return kExitUsage;
    }
  }

  try {
    const chromatone::DecodedAudio audio = chromatone::ReadWavFile(opt.input);
    if (audio.clamped > 0) {
      std::cerr << "chromatone analyze: warning: clamped " << audio.clamped
                << " samples to [-1, 1]\n";
    }

    chromatone::EngineConfig config;
    config.sample_rate = audio.sample_rate;
    config.frame_size = opt.frame_size;
    config.hop = opt.hop;
    config.settings = settings;
    chromatone::Engine engine(config);

    std::ofstream file;
    if (!opt.output.empty() && opt.output != "-") {
      file.open(opt.output, std::ios::trunc);
      if (!file) {
        std::cerr << "chromatone analyze: cannot write " << opt.output << "\n";
        return kExitData;
      }
    }
    std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;

    if (opt.csv) {
      out << chromatone::CsvHeader(opt.features, opt.pitch) << '\n';
    } else {
      out << chromatone::SerializeHeader(engine.MakeHeader(CreationTime())) << '\n';
    }

    const std::span<const double> samples(audio.samples);
    for (std::size_t at = 0; at < samples.size(); at += kChunkSamples) {
      const auto chunk = samples.subspan(at, std::min(kChunkSamples, samples.size() - at));
      for (chromatone::FrameRecord& r : engine.Push(chunk)) {
        if (opt.csv) {
          out << chromatone::CsvRow(r, opt.features, opt.pitch) << '\n';
          continue;
        }
        if (!opt.features) r.features.reset();
        if (!opt.pitch) r.pitch.reset();
        out << chromatone::SerializeRecord(r) << '\n';
      }
    }
    out.flush();
    if (!out) {
      std::cerr << "chromatone analyze: write failed\n";
      return kExitData;
    }
  } catch (const chromatone::Error& e) {
    std::cerr << "chromatone analyze: " << opt.input << ": " << Describe(e) << "\n";
    return kExitData;
  }
  return kExitOk;
}

int RunSynth(const SynthOptions& opt) {
  chromatone::SynthParams params;
  params.kind = *chromatone::ParseWaveKind(opt.wave);
  params.frequency = opt.frequency;
  params.duration = opt.duration;
  params.amplitude = opt.amplitude;
  params.sample_rate = opt.sample_rate;
  params.seed = opt.seed;

  std::vector<double> samples;
  try {
    samples = chromatone::Synthesize(params);
  } catch (const chromatone::Error& e) {
    std::cerr << "chromatone synth: " << Describe(e) << "\n";
    return kExitUsage;
  }
  try {
    chromatone::WriteWavFile(opt.output, samples, opt.sample_rate,
                             opt.format == "float32" ? chromatone::WavSampleFormat::kFloat32
                                                     : chromatone::WavSampleFormat::kPcm16);
  } catch (const chromatone::Error& e) {
    std::cerr << "chromatone synth: " << Describe(e) << "\n";
    return kExitData;
  }
  return kExitOk;
}

int RunStats(const StatsOptions& opt) {
  std::ifstream file;
  if (opt.input != "-") {
    file.open(opt.input);
    if (!file) {
      std::cerr << "chromatone stats: cannot open " << opt.input << "\n";
      return kExitData;
    }
  }
  std::istream& in = file.is_open() ? static_cast<std::istream&>(file) : std::cin;
  try {
    chromatone::StreamReader reader(in);
    chromatone::StatsAccumulator acc;
    while (auto record = reader.Next()) acc.Add(*record);
    std::cout << chromatone::FormatStats(acc.Finish());
  } catch (const chromatone::Error& e) {
    std::cerr << "chromatone stats: " << opt.input << ": " << Describe(e) << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chromatone - map music to visual parameters (pitch->color, energy->size, "
               "timbre->texture)"};
  app.require_subcommand(1);

  auto power_of_two = CLI::Validator(
      [](std::string& s) -> std::string {
        unsigned long long n = 0;
        try {
          n = std::stoull(s);
        } catch (const std::exception&) {
          return "frame size must be an integer";
        }
        if (n < 256 || n > 8192 || (n & (n - 1)) != 0) {
          return "frame size must be a power of two in [256, 8192]";
        }
        return {};
      },
      "POW2[256..8192]");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a WAV file into a frame stream");
  analyze_cmd->add_option("input", analyze.input, "PCM16 or float32 WAV file")->required();
  analyze_cmd->add_option("--out,-o", analyze.output, "Output path (default: standard output)");
  analyze_cmd->add_option("--frame-size", analyze.frame_size, "Analysis frame size")
      ->check(power_of_two)
      ->capture_default_str();
  analyze_cmd->add_option("--hop", analyze.hop, "Hop size in samples")
      ->check(CLI::Range(1, 8192))
      ->capture_default_str();
  analyze_cmd->add_flag("--features", analyze.features, "Include feature values");
  analyze_cmd->add_flag("--pitch", analyze.pitch, "Include pitch results");
  analyze_cmd->add_flag("--csv", analyze.csv, "Write flat CSV instead of the frame stream");
  analyze_cmd->add_option("--config", analyze.config, "key = value mapping config file")
      ->check(CLI::ExistingFile);
  analyze_cmd->footer(
      "CSV columns: frame_index,timestamp,voiced,hue,saturation,lightness,scale,roughness,\n"
      "  sharpness_glow,granularity,displacement\n"
      "  [--features] energy,rms,spectral_centroid,spectral_flatness,spectral_kurtosis,\n"
      "  loudness_total,perceptual_spread,perceptual_sharpness,silent,bark_0..bark_23\n"
      "  [--pitch] pitch_voiced,clarity,frequency,midi_float,midi_note,note_class,octave,cents");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic test signal as WAV");
  synth_cmd->add_option("--wave", synth.wave, "sine | square | white-noise | silence")
      ->check(CLI::IsMember({"sine", "square", "white-noise", "noise", "silence"}))
      ->capture_default_str();
  synth_cmd->add_option("--freq", synth.frequency, "Tone frequency in Hz")->capture_default_str();
  synth_cmd->add_option("--dur", synth.duration, "Duration in seconds")->capture_default_str();
  synth_cmd->add_option("--amp", synth.amplitude, "Amplitude in [0, 1]")->capture_default_str();
  synth_cmd->add_option("--rate", synth.sample_rate, "Sample rate in Hz")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Noise seed")->capture_default_str();
  synth_cmd->add_option("--format", synth.format, "pcm16 | float32")
      ->check(CLI::IsMember({"pcm16", "float32"}))
      ->capture_default_str();
  synth_cmd->add_option("--out,-o", synth.output, "Output WAV path")->required();

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Summarize a frame stream");
  stats_cmd->add_option("stream", stats.input, "Frame stream path, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << failed->help();
    return kExitUsage;
  }

  if (analyze_cmd->parsed()) {
    if (analyze.hop > analyze.frame_size) {
      std::cerr << "chromatone analyze: --hop must not exceed --frame-size\n"
                << analyze_cmd->help();
      return kExitUsage;
    }
    return RunAnalyze(analyze);
  }
  if (synth_cmd->parsed()) return RunSynth(synth);
  return RunStats(stats);
}
