#include "infomax/config.hpp"

#include "infomax/errors.hpp"
#include "infomax/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace infomax::config {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view key, std::string_view text) {
  try {
    return io::parse_double(text);
  } catch (const FormatError&) {
    throw FormatError("config key '" + std::string(key) + "': expected a number, got '" +
                      std::string(text) + "'");
  }
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const auto line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw FormatError("line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(std::string(key), std::string(value)).second) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

std::string format_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

void write_key_values(const KeyValues& kv, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << format_key_values(kv);
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

RunConfig apply_run_config(RunConfig c, const KeyValues& kv, const std::filesystem::path& base_dir) {
  for (const auto& [key, value] : kv) {
    try {
      if (key == "algorithm") c.algorithm = parse_algorithm(value);
      else if (key == "gradient_variant") c.gradient = parse_gradient_variant(value);
      else if (key == "block_size") c.block_size = parse_unsigned(key, value);
      else if (key == "epochs") c.epochs = parse_unsigned(key, value);
      else if (key == "eta") c.adam.eta = parse_real(key, value);
      else if (key == "beta1") c.adam.beta1 = parse_real(key, value);
      else if (key == "beta2") c.adam.beta2 = parse_real(key, value);
      else if (key == "epsilon") c.adam.epsilon = parse_real(key, value);
      else if (key == "mu") c.mu = parse_real(key, value);
      else if (key == "alpha") c.alpha = parse_real(key, value);
      else if (key == "seed") c.seed = parse_unsigned(key, value);
      else if (key == "w0") {
        if (value == "identity") {
          c.w0.reset();
        } else {
          std::filesystem::path p(value);
          c.w0 = io::read_matrix_csv(p.is_absolute() ? p : base_dir / p);
        }
      } else {
        throw FormatError("unknown config key '" + key + "'");
      }
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("config key '") + key + "': " + e.what());
    }
  }
  return c;
}

RunConfig read_run_config(const std::filesystem::path& path) {
  auto c = apply_run_config(RunConfig{}, read_key_values(path), path.parent_path());
  c.validate();
  return c;
}

KeyValues to_key_values(const RunConfig& c) {
  KeyValues kv{
      {"algorithm", std::string(to_string(c.algorithm))},
      {"gradient_variant", std::string(to_string(c.gradient))},
      {"block_size", std::to_string(c.block_size)},
      {"epochs", std::to_string(c.epochs)},
      {"eta", io::format_double(c.adam.eta)},
      {"beta1", io::format_double(c.adam.beta1)},
      {"beta2", io::format_double(c.adam.beta2)},
      {"epsilon", io::format_double(c.adam.epsilon)},
      {"mu", io::format_double(c.mu)},
      {"alpha", io::format_double(c.alpha)},
      {"seed", std::to_string(c.seed)},
  };
  if (!c.w0) kv.emplace("w0", "identity");
  return kv;
}

}  // namespace infomax::config
