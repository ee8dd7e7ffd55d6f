#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "blackboard/model.hpp"
#include "blackboard/rule_engine.hpp"

namespace blackboard {

struct PathSearchResult {
  std::vector<LinkId> links;
  std::chrono::nanoseconds elapsed{0};
};

/// Minimum-length simple start -> end path with at least
/// minimum_path_length() and at most kMaxSearchDepth links, found by
/// exhaustive depth-first enumeration with pruning. Ties go to the
/// lexicographically smallest link-id sequence. Throws TraversalError when no
/// path qualifies.
PathSearchResult find_shortest_path(const Network& network);

struct TraversalStep {
  std::size_t index = 0;
  LinkId link{};
  std::vector<ChangeSet> applied;  // ascending rule id
  std::chrono::nanoseconds elapsed{0};
};

struct TraversalReport {
  std::vector<LinkId> path;
  std::vector<TraversalStep> steps;

  std::chrono::nanoseconds total_elapsed() const;
};

/// Walks the path once. On each link every generic rule is tried exactly once
/// in ascending id order; effects are visible to later rules on the same link.
/// Throws TraversalError if consecutive links do not chain.
TraversalReport simulate_traversal(Network& network, std::span<const LinkId> path);

}  // namespace blackboard
