#include "blackboard/rule_engine.hpp"

#include <set>

namespace blackboard {

namespace {

bool conditions_hold(const Network& network, const std::vector<ConditionPair>& conditions,
                     ContainerId container, bool ignore_if_not_present) {
  for (const auto& [property, desired] : conditions) {
    auto bound = network.facts_with_property(container, property);
    if (bound.empty()) {
      if (!ignore_if_not_present) return false;
      continue;
    }
    for (FactId f : bound) {
      if (network.fact(f).value != desired) return false;
    }
  }
  return true;
}

void write_conditions(Network& network, const std::vector<ConditionPair>& targets, ContainerId container,
                      bool create_if_not_present, std::vector<ChangeRecord>& out) {
  for (const auto& [property, desired] : targets) {
    auto bound = network.facts_with_property(container, property);
    if (bound.empty()) {
      if (!create_if_not_present) continue;
      FactId created = network.add_instance_fact(property, desired);
      network.attach_fact(container, created);
      out.push_back({ChangeKind::FactAdded, container, created, property, desired});
      continue;
    }
    for (FactId f : bound) {
      if (network.fact(f).value == desired) continue;
      network.set_fact_value(f, desired);
      out.push_back({ChangeKind::FactChanged, container, f, property, desired});
    }
  }
}

}  // namespace

BasicFiring evaluate_basic_rule(Network& network, BasicRuleId id) {
  const BasicRule& rule = network.basic_rule(id);
  BasicFiring firing;
  for (FactId f : rule.inputs) {
    if (!network.fact(f).value) return firing;
  }
  firing.triggered = true;
  for (FactId f : rule.outputs) {
    if (network.fact(f).value) continue;
    network.set_fact_value(f, true);
    firing.flipped.push_back(f);
  }
  return firing;
}

std::size_t run_basic_inference(Network& network) {
  std::set<BasicRuleId> fired;
  std::size_t firings = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [id, rule] : network.basic_rules()) {
      (void)rule;
      if (fired.contains(id)) continue;
      if (evaluate_basic_rule(network, id).triggered) {
        fired.insert(id);
        ++firings;
        progress = true;
      }
    }
  }
  return firings;
}

bool check_generic_rule(const Network& network, GenericRuleId id, ContainerId one, ContainerId two) {
  const GenericRule& rule = network.generic_rule(id);
  network.container(one);
  network.container(two);
  return conditions_hold(network, rule.before_one, one, rule.ignore_if_not_present) &&
         conditions_hold(network, rule.before_two, two, rule.ignore_if_not_present);
}

ChangeSet execute_generic_rule(Network& network, GenericRuleId id, ContainerId one, ContainerId two) {
  const GenericRule& rule = network.generic_rule(id);
  network.container(one);
  network.container(two);
  ChangeSet changes{id, {}};
  write_conditions(network, rule.after_one, one, rule.create_if_not_present, changes.records);
  write_conditions(network, rule.after_two, two, rule.create_if_not_present, changes.records);
  return changes;
}

std::optional<ChangeSet> apply_generic_rule_to_link(Network& network, GenericRuleId rule, LinkId link_id) {
  const Link& link = network.link(link_id);
  const ContainerId origin = link.origin;
  const ContainerId destination = link.destination;
  if (!check_generic_rule(network, rule, origin, destination)) return std::nullopt;
  return execute_generic_rule(network, rule, origin, destination);
}

void apply_change_set(Network& network, const ChangeSet& changes) {
  for (const auto& record : changes.records) {
    if (record.kind == ChangeKind::FactAdded) {
      network.add(Fact{record.fact, record.new_value, record.property});
      network.attach_fact(record.container, record.fact);
    } else {
      network.set_fact_value(record.fact, record.new_value);
    }
  }
}

}  // namespace blackboard
