#include "infomax/io.hpp"

#include "infomax/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace infomax::io {
namespace {

namespace fs = std::filesystem;

std::string display(const fs::path& p) { return "'" + p.string() + "'"; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + display(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::ofstream open_for_write(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + display(path));
  return out;
}

bool try_parse_double(std::string_view text, double& value) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(value);
}

// --- WAV (RIFF, PCM16) ---------------------------------------------------

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

template <typename T>
T read_le(const std::vector<char>& buf, std::size_t offset) {
  T v;
  std::memcpy(&v, buf.data() + offset, sizeof(T));
  return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

SignalMatrix read_wav(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + display(path));
  const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0) {
    throw FormatError(display(path) + " is not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_offset = 0, data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const std::string_view id(buf.data() + pos, 4);
    const auto size = read_le<std::uint32_t>(buf, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + 16 > buf.size()) throw FormatError(display(path) + ": short fmt chunk");
      format = read_le<std::uint16_t>(buf, body);
      channels = read_le<std::uint16_t>(buf, body + 2);
      rate = read_le<std::uint32_t>(buf, body + 4);
      bits = read_le<std::uint16_t>(buf, body + 14);
      // WAVE_FORMAT_EXTENSIBLE: the real format tag is the sub-format GUID's first word.
      if (format == 0xFFFE && size >= 40 && body + 26 <= buf.size()) {
        format = read_le<std::uint16_t>(buf, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      data_offset = body;
      data_size = std::min<std::size_t>(size, buf.size() - body);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt || !have_data) throw FormatError(display(path) + ": missing fmt or data chunk");
  if (format != 1 || bits != 16) {
    throw FormatError(display(path) + ": only 16-bit PCM is supported");
  }
  if (channels == 0) throw FormatError(display(path) + ": zero channels");
  if (rate == 0) throw FormatError(display(path) + ": zero sample rate");

  const std::size_t frames = data_size / (2u * channels);
  if (frames == 0) throw FormatError(display(path) + ": no samples");

  Matrix m(channels, static_cast<Eigen::Index>(frames));
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::uint16_t c = 0; c < channels; ++c) {
      const auto s = read_le<std::int16_t>(buf, data_offset + 2 * (f * channels + c));
      m(c, static_cast<Eigen::Index>(f)) = static_cast<double>(s) / 32768.0;
    }
  }
  return SignalMatrix(std::move(m), static_cast<double>(rate));
}

WriteReport write_wav(const SignalMatrix& x, const fs::path& path) {
  const auto channels = static_cast<std::uint16_t>(x.channels());
  if (x.channels() > 0xFFFF) throw InvalidArgument("too many channels for WAV");
  const auto rate = static_cast<std::uint32_t>(std::lround(x.sample_rate_hz()));
  const auto frames = static_cast<std::uint64_t>(x.samples());
  const std::uint64_t data_bytes = frames * channels * 2u;
  if (data_bytes > 0xFFFFFFFFull - 36) throw InvalidArgument("signal too long for a WAV file");

  auto out = open_for_write(path, std::ios::binary);
  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(36 + data_bytes));
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, 1);
  write_le<std::uint16_t>(out, channels);
  write_le<std::uint32_t>(out, std::max<std::uint32_t>(rate, 1));
  write_le<std::uint32_t>(out, std::max<std::uint32_t>(rate, 1) * channels * 2u);
  write_le<std::uint16_t>(out, static_cast<std::uint16_t>(channels * 2u));
  write_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(data_bytes));

  WriteReport report;
  for (Eigen::Index f = 0; f < x.samples(); ++f) {
    for (Eigen::Index c = 0; c < x.channels(); ++c) {
      double v = x.data()(c, f);
      if (v > 1.0 || v < -1.0) {
        ++report.clipped;
        v = std::clamp(v, -1.0, 1.0);
      }
      const long q = std::clamp(std::lround(v * 32768.0), -32768L, 32767L);
      write_le<std::int16_t>(out, static_cast<std::int16_t>(q));
    }
  }
  if (!out) throw FormatError("write failed for " + display(path));
  return report;
}

// --- CSV signals --------------------------------------------------------

SignalMatrix read_signal_csv(const fs::path& path) {
  const auto lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_commas(lines[i]);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size() && numeric; ++k) {
      numeric = try_parse_double(fields[k], row[k]);
    }
    if (!numeric) {
      if (i == 0) continue;  // header
      throw FormatError(display(path) + ": non-numeric value on line " + std::to_string(i + 1));
    }
    if (rows.empty()) width = row.size();
    if (row.size() != width) {
      throw FormatError(display(path) + ": ragged row on line " + std::to_string(i + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || width == 0) throw FormatError(display(path) + ": no samples");

  Matrix m(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t n = 0; n < rows.size(); ++n)
    for (std::size_t c = 0; c < width; ++c)
      m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(n)) = rows[n][c];
  return SignalMatrix(std::move(m));
}

void write_signal_csv(const SignalMatrix& x, const fs::path& path) {
  auto out = open_for_write(path);
  for (Eigen::Index c = 0; c < x.channels(); ++c) out << (c ? "," : "") << "ch" << c + 1;
  out << '\n';
  for (Eigen::Index n = 0; n < x.samples(); ++n) {
    for (Eigen::Index c = 0; c < x.channels(); ++c) {
      out << (c ? "," : "") << format_double(x.data()(c, n));
    }
    out << '\n';
  }
  if (!out) throw FormatError("write failed for " + display(path));
}

constexpr std::string_view kTraceHeader = "iteration,epoch,pi,grad_norm";

std::uint64_t parse_count(std::string_view text, const std::string& where) {
  std::uint64_t v = 0;
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(where + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::optional<double> parse_optional(std::string_view text, const std::string& where) {
  if (trim(text).empty()) return std::nullopt;
  double v = 0.0;
  if (!try_parse_double(text, v)) {
    throw FormatError(where + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

SignalFile SignalFile::from_path(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return {p, ext == ".wav" ? SignalFormat::wav_pcm16 : SignalFormat::csv};
}

ReadResult read_signals(std::span<const SignalFile> files, const ReadOptions& options) {
  if (files.empty()) throw InvalidArgument("read_signals: no input files");

  std::vector<SignalMatrix> parts;
  parts.reserve(files.size());
  for (const auto& f : files) {
    parts.push_back(f.format == SignalFormat::wav_pcm16 ? read_wav(f.path) : read_signal_csv(f.path));
  }

  ReadResult result;
  Eigen::Index shortest = parts.front().samples();
  Eigen::Index longest = shortest;
  Eigen::Index channels = 0;
  for (const auto& p : parts) {
    shortest = std::min(shortest, p.samples());
    longest = std::max(longest, p.samples());
    channels += p.channels();
  }
  if (shortest != longest) {
    if (!options.truncate_to_shortest) {
      throw FormatError("input lengths differ (" + std::to_string(shortest) + " vs " +
                        std::to_string(longest) + " samples); enable truncation to proceed");
    }
    result.warnings.push_back("truncated inputs to the shortest length of " +
                              std::to_string(shortest) + " samples (longest was " +
                              std::to_string(longest) + ")");
  }
  const double rate = parts.front().sample_rate_hz();
  for (const auto& p : parts) {
    if (p.sample_rate_hz() != rate) {
      result.warnings.push_back("inputs have different sample rates; using " +
                                format_double(rate) + " Hz");
      break;
    }
  }

  Matrix m(channels, shortest);
  Eigen::Index row = 0;
  for (const auto& p : parts) {
    m.middleRows(row, p.channels()) = p.data().leftCols(shortest);
    row += p.channels();
  }
  result.signals = SignalMatrix(std::move(m), rate);
  return result;
}

WriteReport write_signals(const SignalMatrix& x, const SignalFile& file) {
  if (file.format == SignalFormat::wav_pcm16) return write_wav(x, file.path);
  write_signal_csv(x, file.path);
  return {};
}

void write_trace(const MetricTrace& trace, const fs::path& path) {
  auto out = open_for_write(path);
  out << kTraceHeader << '\n';
  for (const auto& e : trace.entries) {
    out << e.iteration << ',' << e.epoch << ',';
    if (e.pi) out << format_double(*e.pi);
    out << ',';
    if (e.grad_norm) out << format_double(*e.grad_norm);
    out << '\n';
  }
  if (!out) throw FormatError("write failed for " + display(path));
}

MetricTrace read_trace(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || trim(lines.front()) != kTraceHeader) {
    throw FormatError(display(path) + ": missing trace header '" + std::string(kTraceHeader) + "'");
  }
  MetricTrace trace;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = display(path) + " line " + std::to_string(i + 1);
    const auto f = split_commas(lines[i]);
    if (f.size() != 4) throw FormatError(where + ": expected 4 fields");
    MetricTrace::Entry e{parse_count(f[0], where), parse_count(f[1], where),
                         parse_optional(f[2], where), parse_optional(f[3], where)};
    if (!trace.entries.empty() && e.iteration <= trace.entries.back().iteration) {
      throw FormatError(where + ": iterations must be strictly increasing");
    }
    trace.entries.push_back(e);
  }
  return trace;
}

void write_matrix_csv(const Matrix& m, const fs::path& path) {
  auto out = open_for_write(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
    out << '\n';
  }
  if (!out) throw FormatError("write failed for " + display(path));
}

Matrix read_matrix_csv(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw FormatError(display(path) + ": empty matrix file");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_commas(lines[i]);
    std::vector<double> row;
    for (auto f : fields) row.push_back(parse_double(f));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError(display(path) + ": ragged row on line " + std::to_string(i + 1));
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

double parse_double(std::string_view text) {
  double v = 0.0;
  if (!try_parse_double(text, v)) {
    throw FormatError("expected a finite number, got '" + std::string(trim(text)) + "'");
  }
  return v;
}

}  // namespace infomax::io
