#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_overrides(CLI::App& cmd, infomax::cli::Overrides& o, bool with_algorithm) {
  cmd.add_option("--eta", o.eta, "Adam step size");
  cmd.add_option("--mu", o.mu, "SGD / momentum step size");
  cmd.add_option("--beta1", o.beta1, "Adam first-moment decay");
  cmd.add_option("--beta2", o.beta2, "Adam second-moment decay");
  cmd.add_option("--epsilon", o.epsilon, "Adam denominator offset");
  cmd.add_option("--alpha", o.alpha, "momentum coefficient");
  cmd.add_option("--block-size", o.block_size, "samples per block");
  cmd.add_option("--epochs", o.epochs, "passes over the record");
  cmd.add_option("--gradient", o.gradient, "standard|natural")
      ->check(CLI::IsMember({"standard", "natural"}));
  if (with_algorithm) {
    cmd.add_option("--algorithm", o.algorithm, "adam|sgd|momentum")
        ->check(CLI::IsMember({"adam", "sgd", "momentum"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace infomax::cli;

  CLI::App app{"InfoMax blind source separation with Adam, SGD and momentum"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate sources, mixing matrix and mixtures");
  synth_cmd->add_option("--experiment", synth.experiment, "exp1|exp2|exp3")->required();
  synth_cmd->add_option("--seed", synth.seed, "random seed");
  synth_cmd->add_option("--out", synth.out_dir, "output directory")->required();
  synth_cmd->add_option("--speech", synth.speech, "speech recordings (WAV or CSV) for exp2/exp3");
  synth_cmd->add_flag("--surrogate-speech", synth.surrogate_speech,
                      "use synthetic speech-like sources when no recordings are given");
  synth_cmd->add_option("--length", synth.length, "samples per source");

  SeparateOptions sep;
  auto* sep_cmd = app.add_subcommand("separate", "run one separation");
  sep_cmd->add_option("--input", sep.inputs, "mixture files (WAV or CSV)");
  sep_cmd->add_option("--config", sep.config, "key-value run configuration");
  sep_cmd->add_option("--manifest", sep.manifest, "synth manifest (mixtures and true mixing matrix)");
  sep_cmd->add_option("--mixing", sep.mixing, "true mixing matrix CSV, enables PI");
  sep_cmd->add_option("--out", sep.out_dir, "output directory")->required();
  sep_cmd->add_flag("--truncate", sep.truncate, "truncate inputs to the shortest length");
  add_overrides(*sep_cmd, sep.overrides, true);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "compare adam, sgd and momentum on one experiment");
  bench_cmd->add_option("--experiment", bench.experiment, "exp1|exp2|exp3")->required();
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_option("--out", bench.out_dir, "output directory")->required();
  bench_cmd->add_option("--speech", bench.speech, "speech recordings for exp2/exp3");
  bench_cmd->add_flag("--surrogate-speech", bench.surrogate_speech,
                      "use synthetic speech-like sources when no recordings are given");
  bench_cmd->add_flag("--serial", bench.serial, "run the algorithms one after another");
  add_overrides(*bench_cmd, bench.overrides, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*synth_cmd) return cmd_synth(synth, std::cerr);
  if (*sep_cmd) return cmd_separate(sep, std::cerr);
  return cmd_bench(bench, std::cerr);
}
