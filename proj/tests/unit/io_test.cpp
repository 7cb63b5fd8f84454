#include "infomax/errors.hpp"
#include "infomax/io.hpp"
#include "infomax/signals.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

namespace infomax::io {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("infomax_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

TEST_F(IoTest, CsvSignalRoundTripIsExact) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const SignalMatrix x(testing::random_matrix(1 + trial % 4, 1 + trial % 17, rng, -1e6, 1e6));
    const SignalFile f{path("s.csv"), SignalFormat::csv};
    write_signals(x, f);
    const std::array files{f};
    EXPECT_EQ(read_signals(files).signals.data(), x.data());
  }
}

TEST_F(IoTest, CsvWithoutHeader) {
  write_text("plain.csv", "1,2\n3,4\n5,6\n");
  const std::array files{SignalFile::from_path(path("plain.csv"))};
  const auto r = read_signals(files);
  ASSERT_EQ(r.signals.channels(), 2);
  ASSERT_EQ(r.signals.samples(), 3);
  EXPECT_EQ(r.signals.data()(1, 2), 6.0);
}

TEST_F(IoTest, CsvErrors) {
  write_text("ragged.csv", "a,b\n1,2\n3\n");
  write_text("bad.csv", "1,2\n3,x\n");
  write_text("empty.csv", "");
  for (const char* name : {"ragged.csv", "bad.csv", "empty.csv", "missing.csv"}) {
    const std::array files{SignalFile::from_path(path(name))};
    EXPECT_THROW(read_signals(files), FormatError) << name;
  }
  EXPECT_THROW(read_signals({}), InvalidArgument);
}

TEST_F(IoTest, WavRoundTripWithinQuantization) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const SignalMatrix x(testing::random_matrix(1 + trial % 3, 1 + trial * 7, rng), 8000.0);
    const SignalFile f{path("s.wav"), SignalFormat::wav_pcm16};
    EXPECT_EQ(write_signals(x, f).clipped, 0u);
    const std::array files{f};
    const auto back = read_signals(files).signals;
    ASSERT_EQ(back.channels(), x.channels());
    ASSERT_EQ(back.samples(), x.samples());
    EXPECT_EQ(back.sample_rate_hz(), 8000.0);
    EXPECT_LE((back.data() - x.data()).cwiseAbs().maxCoeff(), std::ldexp(1.0, -15));
  }
}

TEST_F(IoTest, WavExtremesAndClipping) {
  Matrix m(1, 5);
  m << -1.0, 1.0, 0.0, 1.5, -2.0;
  const SignalFile f{path("c.wav"), SignalFormat::wav_pcm16};
  EXPECT_EQ(write_signals(SignalMatrix(m, 8000), f).clipped, 2u);
  const std::array files{f};
  const Matrix back = read_signals(files).signals.data();
  EXPECT_EQ(back(0, 0), -1.0);
  EXPECT_EQ(back(0, 1), 32767.0 / 32768.0);
  EXPECT_EQ(back(0, 2), 0.0);
  EXPECT_EQ(back(0, 3), 32767.0 / 32768.0);
  EXPECT_EQ(back(0, 4), -1.0);
}

TEST_F(IoTest, WavSilence) {
  const SignalFile f{path("z.wav"), SignalFormat::wav_pcm16};
  write_signals(SignalMatrix(Matrix::Zero(2, 100), 8000), f);
  EXPECT_EQ(fs::file_size(f.path), 44u + 400u);
  const std::array files{f};
  EXPECT_EQ(read_signals(files).signals.data(), Matrix::Zero(2, 100));
}

TEST_F(IoTest, TwoMonoWavsStack) {
  std::mt19937_64 rng(3);
  const SignalMatrix a(testing::random_matrix(1, 30000, rng), 8000);
  const SignalMatrix b(testing::random_matrix(1, 30000, rng), 8000);
  write_signals(a, {path("a.wav"), SignalFormat::wav_pcm16});
  write_signals(b, {path("b.wav"), SignalFormat::wav_pcm16});
  const std::array files{SignalFile::from_path(path("a.wav")), SignalFile::from_path(path("b.wav"))};
  const auto r = read_signals(files);
  EXPECT_EQ(r.signals.channels(), 2);
  EXPECT_EQ(r.signals.samples(), 30000);
  EXPECT_TRUE(r.warnings.empty());
}

TEST_F(IoTest, LengthMismatchNeedsTruncation) {
  write_signals(SignalMatrix(Matrix::Zero(1, 50), 8000), {path("a.wav"), SignalFormat::wav_pcm16});
  write_signals(SignalMatrix(Matrix::Zero(1, 40), 8000), {path("b.wav"), SignalFormat::wav_pcm16});
  const std::array files{SignalFile::from_path(path("a.wav")), SignalFile::from_path(path("b.wav"))};
  EXPECT_THROW(read_signals(files), FormatError);
  const auto r = read_signals(files, ReadOptions{true});
  EXPECT_EQ(r.signals.samples(), 40);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("40"), std::string::npos);
}

TEST_F(IoTest, WavRejectsNonPcm16) {
  // 8-bit PCM header with a tiny data chunk.
  std::ofstream out(path("u8.wav"), std::ios::binary);
  const unsigned char header[] = {'R', 'I', 'F', 'F', 38, 0, 0, 0, 'W', 'A', 'V', 'E',
                                  'f', 'm', 't', ' ', 16, 0, 0, 0, 1,   0,   1,   0,
                                  0x40, 0x1f, 0, 0, 0x40, 0x1f, 0, 0, 1, 0, 8, 0,
                                  'd', 'a', 't', 'a', 2, 0, 0, 0, 128, 128};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.close();
  const std::array files{SignalFile::from_path(path("u8.wav"))};
  EXPECT_THROW(read_signals(files), FormatError);
  write_text("junk.wav", "not a wav");
  const std::array junk{SignalFile::from_path(path("junk.wav"))};
  EXPECT_THROW(read_signals(junk), FormatError);
}

TEST_F(IoTest, TraceRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::bernoulli_distribution present(0.7);
  for (int trial = 0; trial < 100; ++trial) {
    MetricTrace t;
    for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(trial % 13); ++i) {
      MetricTrace::Entry e{i * 10, i, std::nullopt, std::nullopt};
      if (present(rng)) e.pi = u(rng);
      if (present(rng)) e.grad_norm = u(rng) * 1e5;
      t.entries.push_back(e);
    }
    write_trace(t, path("t.csv"));
    EXPECT_EQ(read_trace(path("t.csv")), t);
  }
}

TEST_F(IoTest, TraceFileShape) {
  write_trace(MetricTrace{}, path("empty.csv"));
  std::ifstream in(path("empty.csv"));
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(all, "iteration,epoch,pi,grad_norm\n");

  MetricTrace t;
  for (std::uint64_t e = 1; e <= 200; ++e) t.entries.push_back({e * 1000, e, 0.5, std::nullopt});
  write_trace(t, path("t.csv"));
  std::ifstream lines(path("t.csv"));
  std::size_t count = 0;
  for (std::string l; std::getline(lines, l);) ++count;
  EXPECT_EQ(count, 201u);
}

TEST_F(IoTest, TraceMalformed) {
  write_text("a.csv", "iteration,epoch,pi\n1,1,0.5\n");
  write_text("b.csv", "iteration,epoch,pi,grad_norm\n1,1,abc,\n");
  write_text("c.csv", "iteration,epoch,pi,grad_norm\n2,1,,\n1,1,,\n");
  write_text("d.csv", "iteration,epoch,pi,grad_norm\n1,1,0.5\n");
  for (const char* name : {"a.csv", "b.csv", "c.csv", "d.csv"}) {
    EXPECT_THROW(read_trace(path(name)), FormatError) << name;
  }
}

TEST_F(IoTest, MatrixRoundTrip) {
  write_matrix_csv(Matrix::Identity(3, 3), path("i.csv"));
  EXPECT_EQ(read_matrix_csv(path("i.csv")), Matrix::Identity(3, 3));
  write_matrix_csv(signals::hilbert_matrix(5), path("h.csv"));
  EXPECT_EQ(read_matrix_csv(path("h.csv")), signals::hilbert_matrix(5));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = testing::random_matrix(1 + trial % 6, 1 + trial % 4, rng, -1e10, 1e10);
    write_matrix_csv(m, path("r.csv"));
    EXPECT_EQ(read_matrix_csv(path("r.csv")), m);
  }
}

TEST_F(IoTest, MatrixRagged) {
  write_text("ragged.csv", "1,2,3\n4,5\n");
  EXPECT_THROW(read_matrix_csv(path("ragged.csv")), FormatError);
  write_text("empty.csv", "\n");
  EXPECT_THROW(read_matrix_csv(path("empty.csv")), FormatError);
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(parse_double(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_THROW(parse_double("1.5x"), FormatError);
  EXPECT_THROW(parse_double(""), FormatError);
  EXPECT_THROW(parse_double("nan"), FormatError);
}

}  // namespace
}  // namespace infomax::io
