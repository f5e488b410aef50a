// End-to-end checks of the chromatone executable.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "chromatone/engine.h"
#include "chromatone/wav.h"

namespace chromatone {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chromatone_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the CLI with `args`; stdout and stderr land in files under dir_.
  int Run(const std::string& args) {
    const std::string cmd = std::string("\"") + CHROMATONE_CLI + "\" " + args + " >\"" +
                            Path("stdout").string() + "\" 2>\"" + Path("stderr").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  fs::path Path(const std::string& name) const { return dir_ / name; }
  std::string Slurp(const std::string& name) const {
    std::ifstream in(Path(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string Q(const std::string& name) const { return "\"" + Path(name).string() + "\""; }

  fs::path dir_;
};

std::size_t CountLines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST_F(Cli, SynthWritesOneSecondFile) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 1 --out " + Q("a.wav")), 0);
  const auto audio = ReadWavFile(Path("a.wav"));
  EXPECT_EQ(audio.samples.size(), 44100u);
  EXPECT_EQ(audio.sample_rate, 44100);
}

TEST_F(Cli, SynthIsByteIdenticalForSameSeed) {
  ASSERT_EQ(Run("synth --wave white-noise --dur 0.5 --amp 0.5 --seed 7 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("synth --wave white-noise --dur 0.5 --amp 0.5 --seed 7 --out " + Q("b.wav")), 0);
  ASSERT_EQ(Run("synth --wave white-noise --dur 0.5 --amp 0.5 --seed 8 --out " + Q("c.wav")), 0);
  EXPECT_EQ(Slurp("a.wav"), Slurp("b.wav"));
  EXPECT_NE(Slurp("a.wav"), Slurp("c.wav"));
}

TEST_F(Cli, SynthUsageErrors) {
  EXPECT_EQ(Run("synth --wave sine --freq 30000 --out " + Q("a.wav")), 2);
  EXPECT_EQ(Run("synth --wave triangle --out " + Q("a.wav")), 2);
  EXPECT_EQ(Run("synth --wave sine --amp 3 --out " + Q("a.wav")), 2);
  EXPECT_EQ(Run("synth --wave sine"), 2);
  EXPECT_FALSE(fs::exists(Path("a.wav")));
}

TEST_F(Cli, AnalyzeLineCountIsHeaderPlusFrames) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 1.3 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --out " + Q("a.jsonl")), 0);
  const std::size_t samples = ReadWavFile(Path("a.wav")).samples.size();
  EXPECT_EQ(CountLines(Slurp("a.jsonl")), 1 + ExpectedFrameCount(samples, 2048, 512));
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --frame-size 1024 --hop 256 --out " + Q("b.jsonl")), 0);
  EXPECT_EQ(CountLines(Slurp("b.jsonl")), 1 + ExpectedFrameCount(samples, 1024, 256));
}

TEST_F(Cli, AnalyzeToStdoutWithFeaturesAndPitch) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 0.2 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --features --pitch"), 0);
  const auto out = Slurp("stdout");
  EXPECT_NE(out.find("\"specific_loudness\""), std::string::npos);
  EXPECT_NE(out.find("\"note_class\":9"), std::string::npos);
}

TEST_F(Cli, AnalyzeCsv) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 0.5 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --csv --pitch --out " + Q("a.csv")), 0);
  const auto text = Slurp("a.csv");
  EXPECT_EQ(text.rfind(CsvHeader(false, true) + "\n", 0), 0u);
  EXPECT_EQ(CountLines(text), 1 + ExpectedFrameCount(22050, 2048, 512));
}

TEST_F(Cli, AnalyzeUsageAndInputErrors) {
  ASSERT_EQ(Run("synth --wave sine --dur 0.2 --out " + Q("a.wav")), 0);
  EXPECT_EQ(Run("analyze " + Q("missing.wav")), 1);
  EXPECT_EQ(Run("analyze " + Q("a.wav") + " --frame-size 1000"), 2);
  EXPECT_NE(Slurp("stderr").find("Usage"), std::string::npos) << Slurp("stderr");
  EXPECT_EQ(Run("analyze " + Q("a.wav") + " --frame-size 1024 --hop 2048"), 2);
  EXPECT_EQ(Run("analyze " + Q("a.wav") + " --bogus"), 2);
  std::ofstream(Path("junk.wav")) << "not a wav file";
  EXPECT_EQ(Run("analyze " + Q("junk.wav")), 1);
  EXPECT_FALSE(Slurp("stderr").empty());
}

TEST_F(Cli, AnalyzeHonorsConfigFile) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 0.2 --out " + Q("a.wav")), 0);
  std::ofstream(Path("look.conf")) << "saturation_high = 0.5\nsaturation_low = 0.1\n";
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --config " + Q("look.conf")), 0);
  EXPECT_NE(Slurp("stdout").find("\"saturation_high\":0.5"), std::string::npos);
  std::ofstream(Path("bad.conf")) << "wobble = 1\n";
  EXPECT_EQ(Run("analyze " + Q("a.wav") + " --config " + Q("bad.conf")), 2);
  EXPECT_NE(Slurp("stderr").find("line 1"), std::string::npos);
}

TEST_F(Cli, StatsOnA440ReportsNoteClassNine) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 1 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --pitch --out " + Q("a.jsonl")), 0);
  ASSERT_EQ(Run("stats " + Q("a.jsonl")), 0);
  const auto out = Slurp("stdout");
  EXPECT_NE(out.find("dominant_note_class: 9 (A) share=1.0000"), std::string::npos) << out;
}

TEST_F(Cli, StatsOnHeaderOnlyStream) {
  ASSERT_EQ(Run("synth --wave sine --dur 0.01 --out " + Q("short.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("short.wav") + " --out " + Q("empty.jsonl")), 0);
  EXPECT_EQ(CountLines(Slurp("empty.jsonl")), 1u);
  ASSERT_EQ(Run("stats " + Q("empty.jsonl")), 0);
  EXPECT_NE(Slurp("stdout").find("fields: (empty)"), std::string::npos);
}

TEST_F(Cli, StatsOnCorruptLineNamesTheLine) {
  ASSERT_EQ(Run("synth --wave sine --dur 0.5 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --out " + Q("a.jsonl")), 0);
  std::string text = Slurp("a.jsonl");
  // Cut the fourth line in half.
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) pos = text.find('\n', pos) + 1;
  text.erase(pos + 20, text.find('\n', pos) - (pos + 20));
  std::ofstream(Path("bad.jsonl"), std::ios::binary) << text;
  EXPECT_EQ(Run("stats " + Q("bad.jsonl")), 1);
  EXPECT_NE(Slurp("stderr").find("line 4"), std::string::npos) << Slurp("stderr");
  EXPECT_EQ(Run("stats " + Q("nope.jsonl")), 1);
}

TEST_F(Cli, StatsReadsStandardInput) {
  ASSERT_EQ(Run("synth --wave sine --freq 440 --dur 0.5 --out " + Q("a.wav")), 0);
  ASSERT_EQ(Run("analyze " + Q("a.wav") + " --pitch --out " + Q("a.jsonl")), 0);
  ASSERT_EQ(Run("stats - < " + Q("a.jsonl")), 0);
  EXPECT_NE(Slurp("stdout").find("dominant_note_class: 9"), std::string::npos);
}

TEST_F(Cli, HeaderTimestampFollowsSourceDateEpoch) {
  ASSERT_EQ(Run("synth --wave sine --dur 0.1 --out " + Q("a.wav")), 0);
  ASSERT_EQ(::setenv("SOURCE_DATE_EPOCH", "86400", 1), 0);
  const int rc = Run("analyze " + Q("a.wav"));
  ::unsetenv("SOURCE_DATE_EPOCH");
  ASSERT_EQ(rc, 0);
  EXPECT_NE(Slurp("stdout").find("\"created_utc\":\"1970-01-02T00:00:00Z\""), std::string::npos);
}

}  // namespace
}  // namespace chromatone
