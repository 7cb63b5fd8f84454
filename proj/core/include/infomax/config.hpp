#pragma once

#include "infomax/separator.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace infomax::config {

/// Flat `key = value` text. Blank lines and lines starting with '#' are
/// skipped. Duplicate keys are an error.
using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::filesystem::path& path);
std::string format_key_values(const KeyValues& kv);
void write_key_values(const KeyValues& kv, const std::filesystem::path& path);

/// Applies the RunConfig keys found in `kv` on top of `base`. Keys:
/// algorithm, gradient_variant, block_size, epochs, eta, beta1, beta2,
/// epsilon, mu, alpha, seed, w0 (`identity` or a CSV path, resolved
/// against `base_dir`). Unknown keys throw FormatError.
RunConfig apply_run_config(RunConfig base, const KeyValues& kv,
                           const std::filesystem::path& base_dir = {});

RunConfig read_run_config(const std::filesystem::path& path);

/// Every RunConfig field except an explicit w0, which the caller persists
/// separately (the key is written as `identity` or omitted).
KeyValues to_key_values(const RunConfig& config);

}  // namespace infomax::config
