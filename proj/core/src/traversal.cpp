#include "blackboard/traversal.hpp"

#include <string>

#include "blackboard/errors.hpp"
#include "blackboard/netgen.hpp"
#include "path_search.hpp"

namespace blackboard {

PathSearchResult find_shortest_path(const Network& network) {
  using Clock = std::chrono::steady_clock;
  const auto begin = Clock::now();
  detail::PathSearch search(network);
  auto path = search.find_shortest(minimum_path_length(network), kMaxSearchDepth);
  const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - begin);
  if (!path) {
    throw TraversalError("no start -> end path of at least " + std::to_string(minimum_path_length(network)) +
                         " links");
  }
  return {std::move(*path), elapsed};
}

std::chrono::nanoseconds TraversalReport::total_elapsed() const {
  std::chrono::nanoseconds total{0};
  for (const auto& step : steps) total += step.elapsed;
  return total;
}

TraversalReport simulate_traversal(Network& network, std::span<const LinkId> path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (network.link(path[i]).destination != network.link(path[i + 1]).origin) {
      throw TraversalError("path breaks between links " + std::to_string(raw(path[i])) + " and " +
                           std::to_string(raw(path[i + 1])));
    }
  }

  std::vector<GenericRuleId> rules;
  rules.reserve(network.generic_rules().size());
  for (const auto& [id, r] : network.generic_rules()) {
    (void)r;
    rules.push_back(id);
  }

  using Clock = std::chrono::steady_clock;
  TraversalReport report;
  report.path.assign(path.begin(), path.end());
  report.steps.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    TraversalStep step;
    step.index = i;
    step.link = path[i];
    const auto begin = Clock::now();
    for (GenericRuleId rule : rules) {
      if (auto changes = apply_generic_rule_to_link(network, rule, path[i])) {
        step.applied.push_back(std::move(*changes));
      }
    }
    step.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - begin);
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace blackboard
