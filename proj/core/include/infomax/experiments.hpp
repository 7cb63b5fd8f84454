#pragma once

#include "infomax/separator.hpp"
#include "infomax/signals.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infomax::experiments {

/// exp1: five bad-scaled synthetic sources, 5×5 Hilbert mixing, noiseless.
/// exp2: two speech signals, random 2×2 mixing, 30 dB noise.
/// exp3: four speech signals, 4×4 Hilbert mixing, 30 dB noise.
enum class Experiment { exp1, exp2, exp3 };

inline constexpr std::size_t kRecordLength = 30000;
inline constexpr double kSpeechRateHz = 8000.0;
inline constexpr double kNoiseSnrDb = 30.0;

std::string_view to_string(Experiment e);
/// Accepts "exp1", "exp2", "exp3" and the "-style" spellings.
Experiment parse_experiment(std::string_view name);

std::size_t source_count(Experiment e);

/// Independent stream seed for a given purpose, derived from a user seed.
Seed derive_seed(Seed base, std::uint64_t stream);

/// Speech-like stand-ins: Gaussian noise through a random two-pole
/// resonator, gated by a syllable-rate envelope. Zero mean, peak 0.9,
/// mutually independent (separate streams per channel).
SignalMatrix surrogate_speech(std::size_t channels, std::size_t length, Seed seed);

struct ExperimentData {
  Experiment experiment = Experiment::exp1;
  Seed seed = 0;
  SignalMatrix sources;
  MixingMatrix mixing;
  signals::NoiseSpec noise;
  SignalMatrix mixtures;
  bool surrogate_speech = false;
};

/// Builds sources, mixing matrix and mixtures for an experiment. For exp2 and
/// exp3, `speech` supplies the sources (its channel count must match);
/// without it surrogate speech is generated.
ExperimentData synthesize(Experiment e, Seed seed,
                          const std::optional<SignalMatrix>& speech = std::nullopt,
                          std::size_t length = kRecordLength);

/// Per-experiment default hyperparameters for one algorithm.
RunConfig default_config(Experiment e, Algorithm algorithm);

struct BenchRun {
  RunConfig config;
  std::optional<RunResult> result;
  MetricTrace epoch_trace;
  std::string error;  ///< empty on success

  bool ok() const { return result.has_value(); }
  std::optional<double> final_pi() const;
};

/// Runs each config on the same mixtures, with PI measured against the
/// true mixing matrix. A failing run is reported in its BenchRun and does
/// not stop the others. With `parallel`, runs execute on separate threads.
std::vector<BenchRun> run_bench(const ExperimentData& data, std::span<const RunConfig> configs,
                                bool parallel = true);

}  // namespace infomax::experiments
