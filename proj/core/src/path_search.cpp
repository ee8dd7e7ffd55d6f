#include "path_search.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "blackboard/errors.hpp"

namespace blackboard::detail {

PathSearch::PathSearch(const Network& network) {
  if (!network.start() || !network.end()) {
    throw TraversalError("path search requires start and end containers");
  }
  std::map<ContainerId, int> index;
  for (const auto& [id, c] : network.containers()) {
    (void)c;
    index.emplace(id, static_cast<int>(index.size()));
  }
  const auto n = index.size();
  out_.resize(n);
  in_.resize(n);
  // links() iterates in ascending id, so adjacency lists come out sorted.
  for (const auto& [id, l] : network.links()) {
    const int from = index.at(l.origin);
    const int to = index.at(l.destination);
    out_[from].push_back({id, to});
    in_[to].push_back(from);
  }
  start_ = index.at(*network.start());
  end_ = index.at(*network.end());
  on_path_.assign(n, 0);
  forward_mark_.assign(n, 0);
  backward_mark_.assign(n, 0);
  distance_.assign(n, 0);
  queue_.reserve(n);
}

void PathSearch::reset() {
  std::fill(on_path_.begin(), on_path_.end(), 0);
  path_.clear();
}

PathSearch::Bounds PathSearch::bounds(int from) {
  if (++stamp_ == 0) {
    std::fill(forward_mark_.begin(), forward_mark_.end(), 0);
    std::fill(backward_mark_.begin(), backward_mark_.end(), 0);
    stamp_ = 1;
  }

  // Backward closure of end over off-path nodes.
  queue_.clear();
  backward_mark_[end_] = stamp_;
  queue_.push_back(end_);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    for (int prev : in_[queue_[head]]) {
      if (on_path_[prev] || backward_mark_[prev] == stamp_) continue;
      backward_mark_[prev] = stamp_;
      queue_.push_back(prev);
    }
  }

  // Forward BFS from `from`, restricted to nodes that can still reach end.
  std::size_t upper = 0;
  bool reachable = false;
  std::size_t lower = std::numeric_limits<std::size_t>::max();
  queue_.clear();
  forward_mark_[from] = stamp_;
  distance_[from] = 0;
  queue_.push_back(from);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const int node = queue_[head];
    for (const Edge& e : out_[node]) {
      const int next = e.target;
      if (on_path_[next] || forward_mark_[next] == stamp_ || backward_mark_[next] != stamp_) continue;
      forward_mark_[next] = stamp_;
      distance_[next] = distance_[node] + 1;
      ++upper;
      if (next == end_) {
        reachable = true;
        lower = distance_[next];
      }
      queue_.push_back(next);
    }
  }
  return {lower, upper, reachable};
}

bool PathSearch::dfs_any(int node, std::size_t depth) {
  if (node == end_) return depth >= min_length_;
  if (depth >= max_length_) return false;
  on_path_[node] = 1;
  const Bounds b = bounds(node);
  if (!b.reachable || depth + b.upper < min_length_ || depth + b.lower > max_length_) {
    on_path_[node] = 0;
    return false;
  }
  for (const Edge& e : out_[node]) {
    if (on_path_[e.target]) continue;
    path_.push_back(e.link);
    if (dfs_any(e.target, depth + 1)) return true;
    path_.pop_back();
  }
  on_path_[node] = 0;
  return false;
}

bool PathSearch::dfs_exact(int node, std::size_t depth) {
  if (node == end_) return depth == target_length_;
  on_path_[node] = 1;
  const Bounds b = bounds(node);
  if (!b.reachable || depth + b.lower > target_length_ || depth + b.upper < target_length_) {
    on_path_[node] = 0;
    return false;
  }
  for (const Edge& e : out_[node]) {
    if (on_path_[e.target]) continue;
    path_.push_back(e.link);
    if (dfs_exact(e.target, depth + 1)) return true;
    path_.pop_back();
  }
  on_path_[node] = 0;
  return false;
}

std::optional<std::vector<LinkId>> PathSearch::find_any(std::size_t min_length, std::size_t max_length) {
  reset();
  min_length_ = std::max<std::size_t>(min_length, 1);
  max_length_ = max_length;
  if (min_length_ > max_length_) return std::nullopt;
  if (dfs_any(start_, 0)) return path_;
  return std::nullopt;
}

std::optional<std::vector<LinkId>> PathSearch::find_shortest(std::size_t min_length, std::size_t max_length) {
  reset();
  min_length = std::max<std::size_t>(min_length, 1);
  const Bounds initial = bounds(start_);
  if (!initial.reachable) return std::nullopt;
  const std::size_t first = std::max(min_length, initial.lower);
  const std::size_t last = std::min(max_length, initial.upper);
  for (std::size_t length = first; length <= last; ++length) {
    reset();
    target_length_ = length;
    if (dfs_exact(start_, 0)) return path_;
  }
  return std::nullopt;
}

}  // namespace blackboard::detail
