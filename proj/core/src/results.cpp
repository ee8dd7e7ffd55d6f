#include "blackboard/results.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "blackboard/errors.hpp"
#include "blackboard/persistence.hpp"

namespace blackboard {

namespace fs = std::filesystem;

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::vector<std::string> settings_header(const Settings& settings) {
  std::vector<std::string> names;
  for (const auto& s : settings) names.push_back(s.name);
  return names;
}

}  // namespace

const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> columns = {
      "time_to_link",         "avg_time_to_state", "total_traversal_time", "initial_network_size",
      "avg_state_size",       "total_storage_size", "path_length",
  };
  return columns;
}

CombinationAverage average(std::span<const TestResult> rows, std::size_t failed) {
  if (rows.empty()) throw std::invalid_argument("average: no rows");
  CombinationAverage avg;
  avg.combination_id = rows.front().combination_id;
  avg.tests = rows.size();
  avg.failed = failed;
  avg.settings = rows.front().settings;
  for (const auto& r : rows) {
    if (r.combination_id != avg.combination_id) throw std::invalid_argument("average: mixed combinations");
    avg.time_to_link += static_cast<double>(r.time_to_link);
    avg.avg_time_to_state += r.avg_time_to_state;
    avg.total_traversal_time += static_cast<double>(r.total_traversal_time);
    avg.initial_network_size += static_cast<double>(r.initial_network_size);
    avg.avg_state_size += r.avg_state_size;
    avg.total_storage_size += static_cast<double>(r.total_storage_size);
    avg.path_length += static_cast<double>(r.path_length);
  }
  const auto n = static_cast<double>(rows.size());
  avg.time_to_link /= n;
  avg.avg_time_to_state /= n;
  avg.total_traversal_time /= n;
  avg.initial_network_size /= n;
  avg.avg_state_size /= n;
  avg.total_storage_size /= n;
  avg.path_length /= n;
  return avg;
}

std::string combination_csv(std::span<const TestResult> rows) {
  std::string out;
  std::vector<std::string> header = {"combination_id", "test_id"};
  if (!rows.empty()) {
    auto names = settings_header(rows.front().settings);
    header.insert(header.end(), names.begin(), names.end());
  }
  header.insert(header.end(), metric_columns().begin(), metric_columns().end());
  append_row(out, header);
  for (const auto& r : rows) {
    std::vector<std::string> cells = {std::to_string(r.combination_id), std::to_string(r.test_id)};
    for (const auto& s : r.settings) cells.push_back(s.value);
    cells.push_back(std::to_string(r.time_to_link));
    cells.push_back(format_double(r.avg_time_to_state));
    cells.push_back(std::to_string(r.total_traversal_time));
    cells.push_back(std::to_string(r.initial_network_size));
    cells.push_back(format_double(r.avg_state_size));
    cells.push_back(std::to_string(r.total_storage_size));
    cells.push_back(std::to_string(r.path_length));
    append_row(out, cells);
  }
  return out;
}

std::string final_dataset_csv(std::span<const CombinationAverage> averages) {
  std::string out;
  std::vector<std::string> header = {"combination_id", "tests", "failed"};
  if (!averages.empty()) {
    auto names = settings_header(averages.front().settings);
    header.insert(header.end(), names.begin(), names.end());
  }
  header.insert(header.end(), metric_columns().begin(), metric_columns().end());
  append_row(out, header);
  for (const auto& a : averages) {
    std::vector<std::string> cells = {std::to_string(a.combination_id), std::to_string(a.tests),
                                      std::to_string(a.failed)};
    for (const auto& s : a.settings) cells.push_back(s.value);
    for (double v : {a.time_to_link, a.avg_time_to_state, a.total_traversal_time, a.initial_network_size,
                     a.avg_state_size, a.total_storage_size, a.path_length}) {
      cells.push_back(format_double(v));
    }
    append_row(out, cells);
  }
  return out;
}

ExportedResults export_results(std::vector<TestResult> results, const fs::path& directory,
                               const std::map<std::size_t, std::size_t>& failures) {
  if (results.empty()) throw IoError("export_results: nothing to export");
  std::sort(results.begin(), results.end(), [](const TestResult& a, const TestResult& b) {
    return std::tie(a.combination_id, a.test_id) < std::tie(b.combination_id, b.test_id);
  });

  ExportedResults exported;
  auto begin = results.begin();
  while (begin != results.end()) {
    auto end = std::find_if(begin, results.end(),
                            [&](const TestResult& r) { return r.combination_id != begin->combination_id; });
    std::span<const TestResult> rows(&*begin, static_cast<std::size_t>(end - begin));
    const auto id = begin->combination_id;
    auto file = directory / "comboResults" / (std::to_string(id) + ".csv");
    write_file(file, combination_csv(rows));
    exported.combination_files.push_back(std::move(file));
    auto failed = failures.find(id);
    exported.averages.push_back(average(rows, failed == failures.end() ? 0 : failed->second));
    begin = end;
  }
  exported.dataset_file = directory / "results.csv";
  write_file(exported.dataset_file, final_dataset_csv(exported.averages));
  return exported;
}

}  // namespace blackboard
