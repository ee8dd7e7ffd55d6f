#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blackboard/params.hpp"
#include "blackboard/results.hpp"
#include "blackboard/ticks.hpp"

namespace blackboard {

/// One sweep dimension. Usually a single parameter; several parameters listed
/// together move in lockstep (each level holds one value per parameter).
struct SweepAxis {
  std::vector<std::string> parameters;
  std::vector<std::vector<std::string>> levels;

  bool operator==(const SweepAxis&) const = default;
};

struct ExperimentConfig {
  GenerationParams base;
  std::vector<SweepAxis> sweep;
  /// Every sweep level is crossed with these; empty keeps base.fact_assignment.
  std::vector<FactAssignment> assignments;
  std::size_t tests_per_combination = 50;
  std::uint64_t master_seed = 1;
  std::filesystem::path out_dir = "results";
  unsigned jobs = 1;
  std::int64_t tick_ns = kDefaultTickNs;

  void validate() const;
};

struct Combination {
  std::size_t id = 0;
  GenerationParams params;
};

/// One-factor-at-a-time expansion: for each axis, each level, each assignment
/// method, the base parameters with that change applied. Ids are dense from 0
/// in that order. No axes means one combination per assignment method.
std::vector<Combination> expand_combinations(const ExperimentConfig& config);

/// The standard desk-scale sweep over every input parameter, crossed with both
/// fact assignment methods.
ExperimentConfig default_experiment_config();

/// Flat `key = value` text. Keys before any section set base parameters and
/// run options; lines under `[sweep]` define axes:
///
///   fact_count = 50, 100, 150, 200
///   container_count + link_count = 50:100, 100:200
///
/// Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

/// Config text that parses back to `config`.
std::string format_experiment_config(const ExperimentConfig& config);

/// Flat `key = value` generation parameters only.
GenerationParams parse_params(std::string_view text);

/// File stem used for a test's save and change files: "<combination>_<test>".
std::string test_key(std::size_t combination_id, std::size_t test_id);

/// Generate, find the constrained shortest path, save, traverse, and write one
/// change file per link. Throws GenerationError when no traversable network
/// could be built.
TestResult run_test(const GenerationParams& params, std::size_t combination_id, std::size_t test_id,
                    std::uint64_t seed, const std::filesystem::path& out_dir,
                    std::int64_t tick_ns = kDefaultTickNs);

struct CombinationRun {
  std::size_t combination_id = 0;
  std::vector<TestResult> tests;  // successful tests, by test id
  std::optional<CombinationAverage> average;
  std::vector<std::string> failures;
};

/// Runs every test of one combination and writes its comboResults CSV.
CombinationRun run_combination(const ExperimentConfig& config, std::size_t combination_id);

struct SweepRun {
  std::vector<CombinationRun> combinations;
  ExportedResults exported;
};

/// Runs all combinations, then writes every comboResults CSV and results.csv.
SweepRun run_sweep(const ExperimentConfig& config);

}  // namespace blackboard
