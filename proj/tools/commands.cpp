#include "commands.hpp"

#include "infomax/config.hpp"
#include "infomax/errors.hpp"
#include "infomax/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace infomax::cli {
namespace {

namespace fs = std::filesystem;
using experiments::Experiment;

void ensure_dir(const fs::path& dir) {
  if (dir.empty()) throw InvalidArgument("an output directory is required (--out)");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create '" + dir.string() + "': " + ec.message());
}

std::optional<SignalMatrix> load_speech(Experiment e, const std::vector<fs::path>& paths,
                                        bool surrogate, std::ostream& log) {
  if (e == Experiment::exp1) {
    if (!paths.empty()) log << "note: --speech is ignored for exp1\n";
    return std::nullopt;
  }
  if (paths.empty()) {
    if (!surrogate) {
      throw InvalidArgument(std::string(experiments::to_string(e)) +
                            " needs speech recordings (--speech) or --surrogate-speech");
    }
    return std::nullopt;
  }
  std::vector<io::SignalFile> files;
  for (const auto& p : paths) files.push_back(io::SignalFile::from_path(p));
  auto read = io::read_signals(files, io::ReadOptions{true});
  for (const auto& w : read.warnings) log << "warning: " << w << '\n';
  return std::move(read.signals);
}

std::string joined(const std::vector<fs::path>& paths) {
  if (paths.empty()) return "none";
  std::string out;
  for (const auto& p : paths) out += (out.empty() ? "" : ";") + p.string();
  return out;
}

config::KeyValues data_manifest(const experiments::ExperimentData& d,
                                const std::vector<fs::path>& speech) {
  return {
      {"experiment", std::string(experiments::to_string(d.experiment))},
      {"seed", std::to_string(d.seed)},
      {"channels", std::to_string(d.sources.channels())},
      {"length", std::to_string(d.sources.samples())},
      {"sample_rate_hz", io::format_double(d.sources.sample_rate_hz())},
      {"noise_snr_db", d.noise.snr_db ? io::format_double(*d.noise.snr_db) : "none"},
      {"surrogate_speech", d.surrogate_speech ? "true" : "false"},
      {"speech_inputs", d.surrogate_speech ? "none" : joined(speech)},
  };
}

template <typename F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const RunError& e) {
    log << "error: " << e.what() << '\n';
    return kExitRunFailed;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

RunConfig Overrides::apply(RunConfig c) const {
  if (eta) c.adam.eta = *eta;
  if (beta1) c.adam.beta1 = *beta1;
  if (beta2) c.adam.beta2 = *beta2;
  if (epsilon) c.adam.epsilon = *epsilon;
  if (mu) c.mu = *mu;
  if (alpha) c.alpha = *alpha;
  if (block_size) c.block_size = *block_size;
  if (epochs) c.epochs = *epochs;
  if (gradient) c.gradient = parse_gradient_variant(*gradient);
  if (algorithm) c.algorithm = parse_algorithm(*algorithm);
  return c;
}

int cmd_synth(const SynthOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    const auto e = experiments::parse_experiment(o.experiment);
    ensure_dir(o.out_dir);
    const auto speech = load_speech(e, o.speech, o.surrogate_speech, log);
    const auto d = experiments::synthesize(e, o.seed, speech, o.length);

    io::write_signals(d.sources, {o.out_dir / "sources.csv", io::SignalFormat::csv});
    io::write_matrix_csv(d.mixing, o.out_dir / "mixing.csv");
    io::write_signals(d.mixtures, {o.out_dir / "mixtures.csv", io::SignalFormat::csv});

    auto manifest = data_manifest(d, o.speech);
    manifest.emplace("sources_file", "sources.csv");
    manifest.emplace("mixing_matrix", "mixing.csv");
    manifest.emplace("mixtures_file", "mixtures.csv");
    config::write_key_values(manifest, o.out_dir / "manifest.txt");

    log << "wrote " << experiments::to_string(e) << " data (" << d.mixtures.channels() << " x "
        << d.mixtures.samples() << ") to " << o.out_dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_separate(const SeparateOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    RunConfig cfg;
    std::vector<fs::path> inputs = o.inputs;
    std::optional<MixingMatrix> reference;

    if (o.manifest) {
      const auto manifest = config::read_key_values(*o.manifest);
      const auto dir = o.manifest->parent_path();
      if (auto it = manifest.find("experiment"); it != manifest.end()) {
        cfg = experiments::default_config(experiments::parse_experiment(it->second), cfg.algorithm);
      }
      if (auto it = manifest.find("mixing_matrix"); it != manifest.end() && it->second != "none") {
        reference = io::read_matrix_csv(dir / it->second);
      }
      if (auto it = manifest.find("mixtures_file"); inputs.empty() && it != manifest.end()) {
        inputs.push_back(dir / it->second);
      }
    }
    if (o.mixing) reference = io::read_matrix_csv(*o.mixing);
    if (o.config) {
      cfg = config::apply_run_config(cfg, config::read_key_values(*o.config), o.config->parent_path());
    }
    cfg = o.overrides.apply(cfg);
    cfg.validate();
    if (inputs.empty()) throw InvalidArgument("no mixtures given (--input or --manifest)");

    std::vector<io::SignalFile> files;
    for (const auto& p : inputs) files.push_back(io::SignalFile::from_path(p));
    auto read = io::read_signals(files, io::ReadOptions{o.truncate});
    for (const auto& w : read.warnings) log << "warning: " << w << '\n';
    const SignalMatrix& x = read.signals;

    ensure_dir(o.out_dir);
    const auto result = run(x, cfg, RunHooks{{}, reference});
    const auto trace = epoch_reduce(result.trace, block_count(x, cfg.block_size));

    io::write_signals(result.separated, {o.out_dir / "separated.csv", io::SignalFormat::csv});
    io::write_matrix_csv(result.w_final, o.out_dir / "w_final.csv");
    io::write_trace(trace, o.out_dir / "trace.csv");
    auto echo = config::to_key_values(cfg);
    echo.emplace("inputs", joined(inputs));
    echo.emplace("pi_reference", reference ? "true" : "false");
    config::write_key_values(echo, o.out_dir / "run.txt");

    log << "separated " << x.channels() << " channels over " << trace.entries.size() << " epochs";
    if (!trace.entries.empty() && trace.entries.back().pi) {
      log << ", final PI " << io::format_double(*trace.entries.back().pi);
    }
    log << '\n';
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    const auto e = experiments::parse_experiment(o.experiment);
    if (o.overrides.algorithm) throw InvalidArgument("bench always runs all three algorithms");
    ensure_dir(o.out_dir);
    const auto speech = load_speech(e, o.speech, o.surrogate_speech, log);
    const auto data = experiments::synthesize(e, o.seed, speech);

    constexpr std::array algorithms{Algorithm::adam, Algorithm::sgd, Algorithm::momentum};
    std::vector<RunConfig> configs;
    for (auto a : algorithms) {
      auto c = o.overrides.apply(experiments::default_config(e, a));
      c.seed = o.seed;
      c.validate();
      configs.push_back(c);
    }

    const auto runs = experiments::run_bench(data, configs, !o.serial);

    std::ofstream summary(o.out_dir / "summary.csv", std::ios::trunc);
    if (!summary) throw FormatError("cannot write summary.csv");
    summary << "algorithm,status,final_pi,final_grad_norm,error\n";
    bool all_ok = true;
    for (const auto& r : runs) {
      const std::string name(to_string(r.config.algorithm));
      const auto dir = o.out_dir / name;
      ensure_dir(dir);
      summary << name << ',';
      if (r.ok()) {
        io::write_trace(r.epoch_trace, dir / "trace.csv");
        io::write_matrix_csv(r.result->w_final, dir / "w_final.csv");
        const auto& last = r.epoch_trace.entries.back();
        summary << "ok," << io::format_double(last.pi.value_or(0.0)) << ','
                << io::format_double(last.grad_norm.value_or(0.0)) << ",\n";
        log << name << ": final PI " << io::format_double(last.pi.value_or(0.0)) << '\n';
      } else {
        all_ok = false;
        summary << "failed,,," << csv_safe(r.error) << '\n';
        log << name << ": FAILED " << r.error << '\n';
      }
      config::write_key_values(config::to_key_values(r.config), dir / "config.txt");
    }

    auto manifest = data_manifest(data, o.speech);
    config::write_key_values(manifest, o.out_dir / "manifest.txt");
    io::write_matrix_csv(data.mixing, o.out_dir / "mixing.csv");
    return all_ok ? kExitOk : kExitRunFailed;
  });
}

}  // namespace infomax::cli
