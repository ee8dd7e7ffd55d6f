#include "blackboard/netgen.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "blackboard/errors.hpp"
#include "path_search.hpp"

namespace blackboard {

namespace {

std::vector<ConditionPair> random_conditions(std::size_t property_count, std::size_t per_list, Rng& rng) {
  std::vector<ConditionPair> list;
  list.reserve(per_list);
  for (std::size_t index : rng.sample(property_count, per_list)) {
    list.push_back({CommonPropertyId{static_cast<std::uint32_t>(index)}, false});
  }
  for (auto& pair : list) pair.desired = rng.coin();
  return list;
}

std::vector<ConditionPair> same_properties(const std::vector<ConditionPair>& before, Rng& rng) {
  std::vector<ConditionPair> list = before;
  for (auto& pair : list) pair.desired = rng.coin();
  return list;
}

// Each entry moves, with probability `chance`, to a property not currently in
// the list, so it always differs from its before-list counterpart. An entry
// stays put when every property is already in use.
std::vector<ConditionPair> hybrid_properties(const std::vector<ConditionPair>& before, std::size_t property_count,
                                             double chance, Rng& rng) {
  std::vector<ConditionPair> list = before;
  std::vector<char> used(property_count, 0);
  for (const auto& pair : list) used[raw(pair.property)] = 1;
  for (auto& pair : list) {
    if (!rng.chance(chance)) continue;
    const std::size_t free = property_count - list.size();
    if (free == 0) continue;
    auto pick = rng.below(free);
    std::size_t candidate = 0;
    for (;; ++candidate) {
      if (used[candidate]) continue;
      if (pick-- == 0) break;
    }
    used[raw(pair.property)] = 0;
    used[candidate] = 1;
    pair.property = CommonPropertyId{static_cast<std::uint32_t>(candidate)};
  }
  for (auto& pair : list) pair.desired = rng.coin();
  return list;
}

}  // namespace

std::size_t minimum_path_length(const Network& network) { return network.containers().size() / 2; }

void generate_properties_and_facts(Network& network, const GenerationParams& params, Rng& rng) {
  std::vector<CommonPropertyId> properties;
  properties.reserve(params.common_property_count);
  for (std::size_t i = 0; i < params.common_property_count; ++i) {
    properties.push_back(network.add_common_property("cp" + std::to_string(i)));
  }
  for (std::size_t i = 0; i < params.fact_count; ++i) {
    const auto property = properties[rng.below(properties.size())];
    network.add_instance_fact(property, rng.coin());
  }
}

GenericRule generate_generic_rule(const GenerationParams& params, Rng& rng, GenericRuleId id) {
  const auto method = static_cast<RuleMethod>(rng.below(3));
  return generate_generic_rule(params, rng, id, method);
}

GenericRule generate_generic_rule(const GenerationParams& params, Rng& rng, GenericRuleId id, RuleMethod method) {
  const std::size_t n = params.common_property_count;
  const std::size_t k = params.properties_per_rule;
  if (k > n) throw ConfigError("properties_per_rule exceeds common_property_count");

  GenericRule rule;
  rule.id = id;
  rule.title = "gr" + std::to_string(raw(id));
  rule.before_one = random_conditions(n, k, rng);
  rule.before_two = random_conditions(n, k, rng);
  switch (method) {
    case RuleMethod::Uniform:
      rule.after_one = same_properties(rule.before_one, rng);
      rule.after_two = same_properties(rule.before_two, rng);
      break;
    case RuleMethod::Random:
      rule.after_one = random_conditions(n, k, rng);
      rule.after_two = random_conditions(n, k, rng);
      break;
    case RuleMethod::Hybrid:
      rule.after_one = hybrid_properties(rule.before_one, n, params.hybrid_rule_chance, rng);
      rule.after_two = hybrid_properties(rule.before_two, n, params.hybrid_rule_chance, rng);
      break;
  }
  rule.ignore_if_not_present = rng.chance(params.ignore_chance);
  rule.create_if_not_present = rng.chance(params.create_chance);
  return rule;
}

void assign_facts(Network& network, FactAssignment method, Rng& rng) {
  std::vector<ContainerId> containers;
  for (const auto& [id, c] : network.containers()) {
    (void)c;
    containers.push_back(id);
  }
  if (containers.empty()) throw ModelError("cannot assign facts without containers");

  std::vector<FactId> pool;
  for (const auto& [id, f] : network.facts()) {
    (void)f;
    if (!network.owner(id)) pool.push_back(id);
  }

  if (method == FactAssignment::Uniform) {
    std::size_t turn = 0;
    while (!pool.empty()) {
      const auto pick = static_cast<std::ptrdiff_t>(rng.below(pool.size()));
      network.attach_fact(containers[turn % containers.size()], pool[pick]);
      pool.erase(pool.begin() + pick);
      ++turn;
    }
  } else {
    for (FactId f : pool) network.attach_fact(containers[rng.below(containers.size())], f);
  }
}

std::pair<ContainerId, ContainerId> pick_endpoints(std::span<const ContainerId> containers, Rng& rng) {
  if (containers.size() < 2) throw GenerationError("picking endpoints needs at least two containers");
  const auto start = rng.below(containers.size());
  auto end = rng.below(containers.size() - 1);
  if (end >= start) ++end;
  return {containers[start], containers[end]};
}

std::size_t generate_links(Network& network, const GenerationParams& params, Rng& rng) {
  std::vector<ContainerId> containers;
  for (const auto& [id, c] : network.containers()) {
    (void)c;
    containers.push_back(id);
  }
  const std::size_t count = containers.size();
  if (count < 2) throw GenerationError("link generation needs at least two containers");

  auto other_than = [&](std::size_t source) {
    auto target = rng.below(count - 1);
    if (target >= source) ++target;
    return containers[target];
  };
  auto add = [&](ContainerId from, ContainerId to) {
    const auto id = network.next_link_id();
    network.add(Link{id, from, to, "link" + std::to_string(raw(id))});
  };

  for (std::size_t attempt = 1; attempt <= params.max_link_attempts; ++attempt) {
    network.clear_links();
    std::size_t remaining = params.link_count;
    while (remaining >= count) {
      for (std::size_t i = 0; i < count; ++i) add(containers[i], other_than(i));
      remaining -= count;
    }
    for (; remaining > 0; --remaining) {
      const auto from = rng.below(count);
      add(containers[from], other_than(from));
    }
    if (validate_traversability(network)) return attempt;
  }
  network.clear_links();
  throw GenerationError("no traversable link layout after " + std::to_string(params.max_link_attempts) +
                        " attempts");
}

bool validate_traversability(const Network& network) {
  if (!network.start() || !network.end()) return false;
  detail::PathSearch search(network);
  return search.find_any(minimum_path_length(network), kMaxSearchDepth).has_value();
}

Network generate_network(const GenerationParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  Network network;
  generate_properties_and_facts(network, params, rng);
  for (std::size_t i = 0; i < params.rule_count; ++i) {
    network.add(generate_generic_rule(params, rng, network.next_generic_rule_id()));
  }
  std::vector<ContainerId> containers;
  for (std::size_t i = 0; i < params.container_count; ++i) {
    containers.push_back(network.add_container("container" + std::to_string(i)));
  }
  assign_facts(network, params.fact_assignment, rng);
  const auto [start, end] = pick_endpoints(containers, rng);
  network.set_endpoints(start, end);
  generate_links(network, params, rng);
  return network;
}

}  // namespace blackboard
