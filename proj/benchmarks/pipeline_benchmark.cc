#include <benchmark/benchmark.h>

#include <vector>

#include "chromatone/engine.h"
#include "chromatone/features.h"
#include "chromatone/pitch.h"
#include "workload.h"

namespace {

using chromatone::bench::kRate;
using chromatone::bench::MusicLikeSignal;

chromatone::AudioFrame FrameOf(const std::vector<double>& x, std::size_t n) {
  return chromatone::MakeFrame({x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)}, kRate);
}

void BM_Spectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto frame = FrameOf(MusicLikeSignal(0.5), n);
  chromatone::SpectrumAnalyzer analyzer(n);
  for (auto _ : state) benchmark::DoNotOptimize(analyzer.Compute(frame));
}
BENCHMARK(BM_Spectrum)->Arg(1024)->Arg(2048)->Arg(4096);

void BM_Features(benchmark::State& state) {
  const auto frame = FrameOf(MusicLikeSignal(0.5), 2048);
  chromatone::FeatureExtractor extractor(2048);
  for (auto _ : state) benchmark::DoNotOptimize(extractor.Extract(frame));
}
BENCHMARK(BM_Features);

void BM_PitchDetect(benchmark::State& state) {
  const auto frame = FrameOf(MusicLikeSignal(0.5), 2048);
  chromatone::PitchDetector detector(2048, kRate);
  for (auto _ : state) benchmark::DoNotOptimize(detector.Detect(frame));
}
BENCHMARK(BM_PitchDetect);

// Steady-state cost of one hop through framer, features, pitch and mapping.
void BM_EnginePerFrame(benchmark::State& state) {
  const std::vector<double> signal = MusicLikeSignal(4.0);
  chromatone::Engine engine(chromatone::EngineConfig{});
  const std::span<const double> all(signal);
  benchmark::DoNotOptimize(engine.Push(all.first(2048)));
  std::size_t at = 2048;
  for (auto _ : state) {
    if (at + 512 > all.size()) at = 0;
    benchmark::DoNotOptimize(engine.Push(all.subspan(at, 512)));
    at += 512;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnginePerFrame)->Unit(benchmark::kMicrosecond);

// Offline analysis of 60 s of audio; real-time factor is reported as a counter.
void BM_Analyze60s(benchmark::State& state) {
  const std::vector<double> signal = MusicLikeSignal(60.0);
  for (auto _ : state) {
    chromatone::Engine engine(chromatone::EngineConfig{});
    benchmark::DoNotOptimize(engine.Push(signal));
  }
  state.counters["realtime_x"] = benchmark::Counter(
      60.0 * static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Analyze60s)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
