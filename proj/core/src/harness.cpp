#include "blackboard/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "blackboard/errors.hpp"
#include "blackboard/netgen.hpp"
#include "blackboard/persistence.hpp"
#include "blackboard/rng.hpp"
#include "blackboard/traversal.hpp"

namespace blackboard {

namespace fs = std::filesystem;

namespace {

struct Task {
  std::size_t combination_id;
  std::size_t test_id;
  const GenerationParams* params;
};

struct TaskOutcome {
  std::optional<TestResult> result;
  std::string failure;
};

// Runs tasks on `jobs` threads. Outcomes are stored by task index, so the
// result does not depend on scheduling.
std::vector<TaskOutcome> run_tasks(const ExperimentConfig& config, const std::vector<Task>& tasks) {
  std::vector<TaskOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex io_error_lock;
  std::exception_ptr io_error;

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      const auto seed = derive_seed(config.master_seed, static_cast<std::uint32_t>(task.combination_id),
                                    static_cast<std::uint32_t>(task.test_id));
      try {
        outcomes[i].result =
            run_test(*task.params, task.combination_id, task.test_id, seed, config.out_dir, config.tick_ns);
      } catch (const GenerationError& e) {
        outcomes[i].failure = "combination " + std::to_string(task.combination_id) + " test " +
                              std::to_string(task.test_id) + ": " + e.what();
      } catch (...) {
        std::lock_guard lock(io_error_lock);
        if (!io_error) io_error = std::current_exception();
        next = tasks.size();
      }
    }
  };

  const auto threads = std::min<std::size_t>(config.jobs, std::max<std::size_t>(tasks.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (io_error) std::rethrow_exception(io_error);
  return outcomes;
}

CombinationRun collect(std::size_t combination_id, std::vector<TaskOutcome>::iterator begin,
                       std::vector<TaskOutcome>::iterator end) {
  CombinationRun run;
  run.combination_id = combination_id;
  for (auto it = begin; it != end; ++it) {
    if (it->result) {
      run.tests.push_back(std::move(*it->result));
    } else {
      run.failures.push_back(std::move(it->failure));
    }
  }
  if (!run.tests.empty()) run.average = average(run.tests, run.failures.size());
  return run;
}

}  // namespace

std::string test_key(std::size_t combination_id, std::size_t test_id) {
  return std::to_string(combination_id) + "_" + std::to_string(test_id);
}

TestResult run_test(const GenerationParams& params, std::size_t combination_id, std::size_t test_id,
                    std::uint64_t seed, const fs::path& out_dir, std::int64_t tick_ns) {
  Network network = generate_network(params, seed);

  const PathSearchResult path = find_shortest_path(network);
  network.set_shortest_path(path.links);

  TestResult result;
  result.combination_id = combination_id;
  result.test_id = test_id;
  result.settings = to_settings(params);
  result.time_to_link = to_ticks(path.elapsed, tick_ns);
  result.path_length = path.links.size();

  const auto key = test_key(combination_id, test_id);
  result.initial_network_size = save_initial(network, result.settings, out_dir, key).bytes;

  const TraversalReport report = simulate_traversal(network, path.links);
  std::uintmax_t state_bytes = 0;
  for (const auto& step : report.steps) {
    state_bytes += write_change_file(out_dir, key, step).bytes;
    result.total_traversal_time += to_ticks(step.elapsed, tick_ns);
  }
  const auto steps = static_cast<double>(report.steps.size());
  result.avg_time_to_state = static_cast<double>(result.total_traversal_time) / steps;
  result.avg_state_size = static_cast<double>(state_bytes) / steps;
  result.total_storage_size = result.initial_network_size + state_bytes;
  return result;
}

CombinationRun run_combination(const ExperimentConfig& config, std::size_t combination_id) {
  const auto combinations = expand_combinations(config);
  if (combination_id >= combinations.size()) {
    throw ConfigError("combination " + std::to_string(combination_id) + " out of range");
  }
  const auto& combination = combinations[combination_id];
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < config.tests_per_combination; ++t) tasks.push_back({combination_id, t, &combination.params});

  auto outcomes = run_tasks(config, tasks);
  auto run = collect(combination_id, outcomes.begin(), outcomes.end());
  if (!run.tests.empty()) {
    write_file(config.out_dir / "comboResults" / (std::to_string(combination_id) + ".csv"),
               combination_csv(run.tests));
  }
  return run;
}

SweepRun run_sweep(const ExperimentConfig& config) {
  config.validate();
  const auto combinations = expand_combinations(config);
  std::vector<Task> tasks;
  for (const auto& c : combinations) {
    for (std::size_t t = 0; t < config.tests_per_combination; ++t) tasks.push_back({c.id, t, &c.params});
  }
  auto outcomes = run_tasks(config, tasks);

  SweepRun sweep;
  std::vector<TestResult> all;
  std::map<std::size_t, std::size_t> failures;
  for (std::size_t c = 0; c < combinations.size(); ++c) {
    const auto begin = outcomes.begin() + static_cast<std::ptrdiff_t>(c * config.tests_per_combination);
    auto run = collect(c, begin, begin + static_cast<std::ptrdiff_t>(config.tests_per_combination));
    all.insert(all.end(), run.tests.begin(), run.tests.end());
    failures[c] = run.failures.size();
    sweep.combinations.push_back(std::move(run));
  }
  if (!all.empty()) sweep.exported = export_results(std::move(all), config.out_dir, failures);
  return sweep;
}

}  // namespace blackboard
