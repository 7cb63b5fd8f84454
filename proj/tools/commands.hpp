#pragma once

#include "infomax/experiments.hpp"
#include "infomax/separator.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace infomax::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailed = 1;
inline constexpr int kExitUsage = 2;

/// Command-line hyperparameter overrides, applied on top of defaults or a
/// config file.
struct Overrides {
  std::optional<double> eta, mu, beta1, beta2, epsilon, alpha;
  std::optional<std::size_t> block_size, epochs;
  std::optional<std::string> gradient, algorithm;

  RunConfig apply(RunConfig c) const;
};

struct SynthOptions {
  std::string experiment = "exp1";
  Seed seed = 0;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> speech;
  bool surrogate_speech = false;
  std::size_t length = experiments::kRecordLength;
};

struct SeparateOptions {
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> mixing;
  std::filesystem::path out_dir;
  bool truncate = false;
  Overrides overrides;
};

struct BenchOptions {
  std::string experiment = "exp1";
  Seed seed = 0;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> speech;
  bool surrogate_speech = false;
  bool serial = false;
  Overrides overrides;
};

/// Writes sources.csv, mixing.csv, mixtures.csv and manifest.txt.
int cmd_synth(const SynthOptions& options, std::ostream& log);

/// Writes separated.csv, w_final.csv, trace.csv (per epoch) and run.txt.
int cmd_separate(const SeparateOptions& options, std::ostream& log);

/// Writes <algorithm>/trace.csv and <algorithm>/w_final.csv for adam, sgd
/// and momentum, plus summary.csv and manifest.txt.
int cmd_bench(const BenchOptions& options, std::ostream& log);

}  // namespace infomax::cli
