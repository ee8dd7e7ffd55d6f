#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "blackboard/model.hpp"

namespace blackboard::detail {

/// Depth-first search for simple start -> end link paths whose length lies in
/// [min_length, max_length]. Children are visited in ascending link id, so the
/// first path found at a given length is the lexicographically smallest one.
///
/// Each visited node is pruned with two bounds computed on the graph minus the
/// current path: the remaining length is at least the BFS distance to end and
/// at most the number of nodes that are both reachable from the node and able
/// to reach end.
class PathSearch {
 public:
  explicit PathSearch(const Network& network);

  /// First qualifying path in DFS order.
  std::optional<std::vector<LinkId>> find_any(std::size_t min_length, std::size_t max_length);

  /// Minimum-length qualifying path, ties broken lexicographically.
  std::optional<std::vector<LinkId>> find_shortest(std::size_t min_length, std::size_t max_length);

 private:
  struct Edge {
    LinkId link;
    int target;
  };
  struct Bounds {
    std::size_t lower;
    std::size_t upper;
    bool reachable;
  };

  Bounds bounds(int from);
  bool dfs_any(int node, std::size_t depth);
  bool dfs_exact(int node, std::size_t depth);
  void reset();

  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<int>> in_;
  int start_ = -1;
  int end_ = -1;

  std::size_t min_length_ = 0;
  std::size_t max_length_ = 0;
  std::size_t target_length_ = 0;

  std::vector<char> on_path_;
  std::vector<LinkId> path_;

  std::vector<std::uint32_t> forward_mark_;
  std::vector<std::uint32_t> backward_mark_;
  std::vector<std::size_t> distance_;
  std::vector<int> queue_;
  std::uint32_t stamp_ = 0;
};

}  // namespace blackboard::detail
