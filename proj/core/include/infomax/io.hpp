#pragma once

#include "infomax/metrics.hpp"
#include "infomax/types.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace infomax::io {

enum class SignalFormat { wav_pcm16, csv };

struct SignalFile {
  std::filesystem::path path;
  SignalFormat format = SignalFormat::csv;

  /// Picks the format from the extension (.wav → PCM16, anything else CSV).
  static SignalFile from_path(const std::filesystem::path& p);
};

struct ReadOptions {
  /// Cut every file to the shortest length instead of failing.
  bool truncate_to_shortest = false;
};

struct ReadResult {
  SignalMatrix signals;
  std::vector<std::string> warnings;
};

/// Stacks the channels of every file, in order. PCM samples are divided by
/// 32768.
ReadResult read_signals(std::span<const SignalFile> files, const ReadOptions& options = {});

struct WriteReport {
  std::size_t clipped = 0;  ///< samples clamped to [-1, 1] (WAV only)
};

WriteReport write_signals(const SignalMatrix& x, const SignalFile& file);

/// CSV with header `iteration,epoch,pi,grad_norm`; absent values are empty.
void write_trace(const MetricTrace& trace, const std::filesystem::path& path);
MetricTrace read_trace(const std::filesystem::path& path);

/// Plain CSV, one matrix row per line.
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);
Matrix read_matrix_csv(const std::filesystem::path& path);

/// 17 significant digits; enough to round-trip any double.
std::string format_double(double v);
/// Throws FormatError on anything that is not a complete decimal number.
double parse_double(std::string_view text);

}  // namespace infomax::io
