#include "infomax/experiments.hpp"

#include "infomax/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

namespace infomax::experiments {

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::exp1: return "exp1";
    case Experiment::exp2: return "exp2";
    case Experiment::exp3: return "exp3";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  if (name == "exp1") return Experiment::exp1;
  if (name == "exp2" || name == "exp2-style") return Experiment::exp2;
  if (name == "exp3" || name == "exp3-style") return Experiment::exp3;
  throw InvalidArgument("unknown experiment '" + std::string(name) + "' (exp1|exp2|exp3)");
}

std::size_t source_count(Experiment e) {
  switch (e) {
    case Experiment::exp1: return 5;
    case Experiment::exp2: return 2;
    case Experiment::exp3: return 4;
  }
  return 0;
}

Seed derive_seed(Seed base, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<Seed>(out[0]) << 32) | out[1];
}

SignalMatrix surrogate_speech(std::size_t channels, std::size_t length, Seed seed) {
  if (channels == 0 || length == 0) throw InvalidArgument("surrogate_speech: empty request");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double fs = kSpeechRateHz;

  Matrix s(static_cast<Eigen::Index>(channels), static_cast<Eigen::Index>(length));
  for (std::size_t c = 0; c < channels; ++c) {
    std::mt19937_64 rng(derive_seed(seed, 1000 + c));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    // Two-pole resonator standing in for a formant.
    const double centre_hz = 250.0 + 950.0 * uniform(rng);
    const double radius = 0.97;
    const double a1 = 2.0 * radius * std::cos(two_pi * centre_hz / fs);
    const double a2 = -radius * radius;

    const double syllable_hz = 2.5 + 2.5 * uniform(rng);
    const double phase = two_pi * uniform(rng);

    // Talk/pause segments with exponentially distributed durations.
    std::exponential_distribution<double> segment_len(1.0 / (0.3 * fs));
    bool talking = uniform(rng) < 0.7;
    double segment_left = segment_len(rng);

    double y1 = 0.0, y2 = 0.0;
    for (std::size_t n = 0; n < length; ++n) {
      if (segment_left <= 0.0) {
        talking = uniform(rng) < 0.7;
        segment_left = segment_len(rng);
      }
      segment_left -= 1.0;

      const double y = gauss(rng) + a1 * y1 + a2 * y2;
      y2 = y1;
      y1 = y;

      const double syllable = std::max(0.0, std::sin(two_pi * syllable_hz * n / fs + phase));
      const double gate = talking ? 1.0 : 0.05;
      s(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(n)) = y * syllable * syllable * gate;
    }
  }

  for (Eigen::Index c = 0; c < s.rows(); ++c) {
    s.row(c).array() -= s.row(c).mean();
    const double peak = s.row(c).cwiseAbs().maxCoeff();
    if (peak > 0.0) s.row(c) *= 0.9 / peak;
  }
  return SignalMatrix(std::move(s), fs);
}

ExperimentData synthesize(Experiment e, Seed seed, const std::optional<SignalMatrix>& speech,
                          std::size_t length) {
  ExperimentData d;
  d.experiment = e;
  d.seed = seed;
  const std::size_t n = source_count(e);

  if (e == Experiment::exp1) {
    d.sources = signals::generate_badly_scaled_sources(length, derive_seed(seed, 1));
    d.mixing = signals::hilbert_matrix(n);
    d.noise = signals::NoiseSpec::none();
  } else {
    if (speech) {
      if (static_cast<std::size_t>(speech->channels()) != n) {
        throw InvalidArgument(std::string(to_string(e)) + " needs " + std::to_string(n) +
                              " speech channels, got " + std::to_string(speech->channels()));
      }
      d.sources = *speech;
    } else {
      d.sources = surrogate_speech(n, length, derive_seed(seed, 1));
      d.surrogate_speech = true;
    }
    d.mixing = e == Experiment::exp2 ? signals::random_mixing_matrix(n, derive_seed(seed, 2))
                                     : signals::hilbert_matrix(n);
    d.noise = signals::NoiseSpec::snr(kNoiseSnrDb);
  }
  d.mixtures = signals::mix(d.sources, d.mixing, d.noise, derive_seed(seed, 3));
  return d;
}

RunConfig default_config(Experiment e, Algorithm algorithm) {
  RunConfig c;
  c.algorithm = algorithm;
  c.block_size = 30;
  c.alpha = 0.5;
  if (e == Experiment::exp1) {
    c.gradient = GradientVariant::standard;
    c.epochs = 200;
    c.adam = AdamHyper{0.001, 0.5, 0.75, 1e-8};
    c.mu = 5e-5;
  } else {
    c.gradient = GradientVariant::natural;
    c.epochs = 100;
    c.adam = AdamHyper{0.001, 0.9, 0.999, 1e-8};
    c.mu = 0.001;
  }
  return c;
}

std::optional<double> BenchRun::final_pi() const {
  if (!ok() || epoch_trace.entries.empty()) return std::nullopt;
  return epoch_trace.entries.back().pi;
}

std::vector<BenchRun> run_bench(const ExperimentData& data, std::span<const RunConfig> configs,
                                bool parallel) {
  const auto one = [&data](const RunConfig& config) {
    BenchRun r;
    r.config = config;
    try {
      r.result = run(data.mixtures, config, RunHooks{{}, data.mixing});
      r.epoch_trace = epoch_reduce(r.result->trace, block_count(data.mixtures, config.block_size));
    } catch (const std::exception& e) {
      r.result.reset();
      r.error = e.what();
    }
    return r;
  };

  std::vector<BenchRun> out;
  out.reserve(configs.size());
  if (!parallel) {
    for (const auto& c : configs) out.push_back(one(c));
    return out;
  }
  std::vector<std::future<BenchRun>> pending;
  pending.reserve(configs.size());
  for (const auto& c : configs) pending.push_back(std::async(std::launch::async, one, std::cref(c)));
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace infomax::experiments
