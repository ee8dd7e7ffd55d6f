#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "blackboard/model.hpp"

namespace blackboard {

enum class ChangeKind { FactAdded, FactChanged };

struct ChangeRecord {
  ChangeKind kind = ChangeKind::FactChanged;
  ContainerId container{};
  FactId fact{};
  CommonPropertyId property{};
  bool new_value = false;

  bool operator==(const ChangeRecord&) const = default;
};

/// Mutations produced by one generic rule execution, in application order:
/// container one's after-list first, then container two's.
struct ChangeSet {
  GenericRuleId rule{};
  std::vector<ChangeRecord> records;

  bool operator==(const ChangeSet&) const = default;
};

struct BasicFiring {
  bool triggered = false;
  std::vector<FactId> flipped;  // outputs that went false -> true
};

/// Fires the rule if every input fact is true, setting every output to true.
BasicFiring evaluate_basic_rule(Network& network, BasicRuleId rule);

/// Scans rules in ascending id order, firing each satisfied rule at most once,
/// until a full scan fires nothing. Returns the number of firings.
std::size_t run_basic_inference(Network& network);

/// Checking phase. before_one is evaluated against `one`, before_two against
/// `two`. A property with no bound fact passes only when ignore_if_not_present
/// is set; a bound fact with the wrong value always fails. Never mutates.
bool check_generic_rule(const Network& network, GenericRuleId rule, ContainerId one, ContainerId two);

/// Execution phase. Writes the after-list values into every matching fact and,
/// with create_if_not_present, creates missing ones. Only real flips are
/// recorded as FactChanged. The caller is responsible for having checked.
ChangeSet execute_generic_rule(Network& network, GenericRuleId rule, ContainerId one, ContainerId two);

/// Check-then-execute with origin bound to container one and destination to
/// container two. nullopt means the rule is not compatible with the link.
std::optional<ChangeSet> apply_generic_rule_to_link(Network& network, GenericRuleId rule, LinkId link);

/// Re-applies recorded changes: FactAdded creates and attaches the fact with
/// its recorded id, FactChanged overwrites the value.
void apply_change_set(Network& network, const ChangeSet& changes);

}  // namespace blackboard
