#pragma once

#include <cstdint>
#include <type_traits>

namespace blackboard {

// Strongly typed entity ids. Values are dense and assigned in creation order.
enum class CommonPropertyId : std::uint32_t {};
enum class FactId : std::uint32_t {};
enum class ContainerId : std::uint32_t {};
enum class LinkId : std::uint32_t {};
enum class BasicRuleId : std::uint32_t {};
enum class GenericRuleId : std::uint32_t {};
enum class ActionId : std::uint32_t {};

template <typename T>
concept EntityId = std::is_enum_v<T> && std::is_same_v<std::underlying_type_t<T>, std::uint32_t>;

template <EntityId Id>
constexpr std::uint32_t raw(Id id) noexcept {
  return static_cast<std::uint32_t>(id);
}

}  // namespace blackboard
