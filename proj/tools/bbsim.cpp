// bbsim: experiment driver for generic-rule blackboard networks.
//
//   bbsim run --config sweep.cfg [--master-seed N] [--out DIR] [--jobs N] [--tick-ns N]
//   bbsim single --params params.cfg --seed N --out DIR
//   bbsim validate saves/0_3.txt
//   bbsim replay saves/0_3.txt changes/
//   bbsim default-config
//
// Exit codes: 0 success, 1 invalid config, 2 I/O or malformed file,
// 3 generation failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "blackboard/errors.hpp"
#include "blackboard/harness.hpp"
#include "blackboard/model.hpp"
#include "blackboard/persistence.hpp"

namespace fs = std::filesystem;
using namespace blackboard;

namespace {

enum ExitCode : int { kOk = 0, kBadConfig = 1, kIo = 2, kGeneration = 3 };

int run_command(const std::optional<fs::path>& config_file, const std::optional<std::uint64_t>& master_seed,
                const std::optional<fs::path>& out, const std::optional<unsigned>& jobs,
                const std::optional<std::int64_t>& tick_ns, const std::optional<std::size_t>& tests) {
  ExperimentConfig config = config_file ? load_experiment_config(*config_file) : default_experiment_config();
  if (master_seed) config.master_seed = *master_seed;
  if (out) config.out_dir = *out;
  if (jobs) config.jobs = *jobs;
  if (tick_ns) config.tick_ns = *tick_ns;
  if (tests) config.tests_per_combination = *tests;
  config.validate();

  const auto sweep = run_sweep(config);
  std::size_t failed = 0;
  for (const auto& c : sweep.combinations) {
    for (const auto& f : c.failures) std::cerr << "warning: " << f << " (excluded from averages)\n";
    failed += c.failures.size();
  }
  std::size_t succeeded = 0;
  for (const auto& c : sweep.combinations) succeeded += c.tests.size();
  std::cout << sweep.combinations.size() << " combinations, " << succeeded << " tests, " << failed << " failed\n";
  if (succeeded == 0) {
    std::cerr << "error: every test failed to generate a traversable network\n";
    return kGeneration;
  }
  std::cout << "final dataset: " << sweep.exported.dataset_file.string() << "\n";
  return kOk;
}

int single_command(const fs::path& params_file, std::uint64_t seed, const fs::path& out, std::int64_t tick_ns) {
  const auto params = parse_params(read_file(params_file));
  const auto result = run_test(params, 0, 0, seed, out, tick_ns);
  std::cout << combination_csv(std::span<const TestResult>(&result, 1));
  return kOk;
}

int validate_command(const fs::path& save_file) {
  const auto snapshot = load_snapshot(save_file);
  params_from_settings(snapshot.settings);
  const auto problems = find_integrity_problems(snapshot.network);
  for (const auto& p : problems) std::cout << "problem: " << p << "\n";
  const auto& n = snapshot.network;
  std::cout << n.common_properties().size() << " common properties, " << n.facts().size() << " facts, "
            << n.containers().size() << " containers, " << n.links().size() << " links, "
            << n.generic_rules().size() << " generic rules\n";
  if (!problems.empty()) return kIo;
  std::cout << "ok " << network_digest(n) << "\n";
  return kOk;
}

int replay_command(const fs::path& save_file, const fs::path& changes_dir) {
  Network network = load_network(save_file);
  std::cout << "initial " << network_digest(network) << "\n";
  const auto stem = save_file.stem().string();
  std::size_t steps = 0;
  std::size_t rules = 0;
  std::size_t records = 0;
  for (;; ++steps) {
    const auto file = changes_dir / (stem + "-" + std::to_string(steps) + ".txt");
    if (!fs::exists(file)) break;
    const auto replayed = apply_change_file(network, read_file(file));
    rules += replayed.applied.size();
    for (const auto& c : replayed.applied) records += c.records.size();
  }
  std::cout << steps << " steps, " << rules << " rule runs, " << records << " changes\n";
  std::cout << "final " << network_digest(network) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic-rule blackboard network experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a parameter sweep and export CSV results");
  std::optional<fs::path> config_file;
  std::optional<std::uint64_t> master_seed;
  std::optional<fs::path> run_out;
  std::optional<unsigned> jobs;
  std::optional<std::int64_t> run_tick_ns;
  std::optional<std::size_t> tests;
  run->add_option("--config", config_file, "Sweep config file (default: built-in sweep)");
  run->add_option("--master-seed", master_seed, "Master seed for per-test seed derivation");
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--tick-ns", run_tick_ns, "Nanoseconds per tick")->check(CLI::PositiveNumber);
  run->add_option("--tests", tests, "Tests per combination")->check(CLI::PositiveNumber);

  auto* single = app.add_subcommand("single", "Run one test");
  fs::path params_file;
  std::uint64_t seed = 0;
  fs::path single_out;
  std::int64_t single_tick_ns = kDefaultTickNs;
  single->add_option("--params", params_file, "Generation parameter file")->required();
  single->add_option("--seed", seed, "Generation seed")->required();
  single->add_option("--out", single_out, "Output directory")->required();
  single->add_option("--tick-ns", single_tick_ns, "Nanoseconds per tick")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Load a save file and re-check its invariants");
  fs::path validate_file;
  validate->add_option("save-file", validate_file)->required();

  auto* replay = app.add_subcommand("replay", "Replay change files onto a save file and print the final digest");
  fs::path replay_file;
  fs::path changes_dir;
  replay->add_option("save-file", replay_file)->required();
  replay->add_option("changes-dir", changes_dir)->required();

  auto* print_default = app.add_subcommand("default-config", "Print the built-in sweep config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  try {
    if (*run) return run_command(config_file, master_seed, run_out, jobs, run_tick_ns, tests);
    if (*single) return single_command(params_file, seed, single_out, single_tick_ns);
    if (*validate) return validate_command(validate_file);
    if (*replay) return replay_command(replay_file, changes_dir);
    if (*print_default) {
      std::cout << format_experiment_config(default_experiment_config());
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kBadConfig;
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return kGeneration;
  } catch (const ParseError& e) {
    std::cerr << "malformed file: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
