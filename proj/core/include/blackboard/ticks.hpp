#pragma once

#include <chrono>
#include <cstdint>

namespace blackboard {

/// Timing unit of every reported duration.
using Ticks = std::int64_t;

inline constexpr std::int64_t kDefaultTickNs = 100;

/// Converts a non-negative duration to ticks of `tick_ns` nanoseconds,
/// rounding half up.
constexpr Ticks to_ticks(std::chrono::nanoseconds duration, std::int64_t tick_ns = kDefaultTickNs) {
  const std::int64_t ns = duration.count();
  return (2 * ns + tick_ns) / (2 * tick_ns);
}

}  // namespace blackboard
