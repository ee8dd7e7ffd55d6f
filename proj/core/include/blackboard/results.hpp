#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "blackboard/params.hpp"
#include "blackboard/ticks.hpp"

namespace blackboard {

/// One test's output row. Times are in ticks, sizes in bytes.
struct TestResult {
  std::size_t combination_id = 0;
  std::size_t test_id = 0;
  Settings settings;
  Ticks time_to_link = 0;
  double avg_time_to_state = 0;
  Ticks total_traversal_time = 0;
  std::uintmax_t initial_network_size = 0;
  double avg_state_size = 0;
  std::uintmax_t total_storage_size = 0;
  std::size_t path_length = 0;

  bool operator==(const TestResult&) const = default;
};

/// Per-combination arithmetic means over the successful tests.
struct CombinationAverage {
  std::size_t combination_id = 0;
  std::size_t tests = 0;
  std::size_t failed = 0;
  Settings settings;
  double time_to_link = 0;
  double avg_time_to_state = 0;
  double total_traversal_time = 0;
  double initial_network_size = 0;
  double avg_state_size = 0;
  double total_storage_size = 0;
  double path_length = 0;

  bool operator==(const CombinationAverage&) const = default;
};

/// Names of the numeric output columns, in CSV order.
const std::vector<std::string>& metric_columns();

/// Means in row order. `rows` must be non-empty and share one combination.
CombinationAverage average(std::span<const TestResult> rows, std::size_t failed = 0);

std::string combination_csv(std::span<const TestResult> rows);
std::string final_dataset_csv(std::span<const CombinationAverage> averages);

struct ExportedResults {
  std::vector<std::filesystem::path> combination_files;
  std::filesystem::path dataset_file;
  std::vector<CombinationAverage> averages;
};

/// Writes `comboResults/<combination>.csv` per combination and `results.csv`
/// with one averaged row per combination. Rows are sorted by
/// (combination, test) first. `failures` counts excluded tests per combination.
ExportedResults export_results(std::vector<TestResult> results, const std::filesystem::path& directory,
                               const std::map<std::size_t, std::size_t>& failures = {});

}  // namespace blackboard
