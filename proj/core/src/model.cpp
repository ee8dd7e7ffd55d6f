#include "blackboard/model.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "blackboard/errors.hpp"

namespace blackboard {

namespace {

template <typename Id, typename Entity>
const Entity& lookup(const std::map<Id, Entity>& map, Id id, const char* kind) {
  auto it = map.find(id);
  if (it == map.end()) {
    throw ModelError(std::string("unknown ") + kind + " id " + std::to_string(raw(id)));
  }
  return it->second;
}

template <typename Id, typename Entity>
void require_fresh(const std::map<Id, Entity>& map, Id id, const char* kind) {
  if (map.contains(id)) {
    throw ModelError(std::string("duplicate ") + kind + " id " + std::to_string(raw(id)));
  }
}

template <typename Id, typename Entity>
Id next_id(const std::map<Id, Entity>& map) {
  if (map.empty()) return Id{0};
  return Id{raw(map.rbegin()->first) + 1};
}

}  // namespace

CommonPropertyId Network::add(CommonProperty property) {
  require_fresh(properties_, property.id, "common property");
  if (property.description.empty()) {
    throw ModelError("common property " + std::to_string(raw(property.id)) + " has an empty description");
  }
  auto id = property.id;
  properties_.emplace(id, std::move(property));
  return id;
}

FactId Network::add(Fact fact) {
  require_fresh(facts_, fact.id, "fact");
  if (auto property = fact.property()) {
    lookup(properties_, *property, "common property");
  }
  auto id = fact.id;
  facts_.emplace(id, std::move(fact));
  return id;
}

ContainerId Network::add(Container container) {
  require_fresh(containers_, container.id, "container");
  std::set<FactId> seen;
  for (FactId f : container.facts) {
    lookup(facts_, f, "fact");
    if (owners_.contains(f) || !seen.insert(f).second) {
      throw ModelError("fact " + std::to_string(raw(f)) + " is already attached to a container");
    }
  }
  auto id = container.id;
  for (FactId f : container.facts) owners_.emplace(f, id);
  containers_.emplace(id, std::move(container));
  return id;
}

LinkId Network::add(Link link) {
  require_fresh(links_, link.id, "link");
  lookup(containers_, link.origin, "container");
  lookup(containers_, link.destination, "container");
  if (link.origin == link.destination) {
    throw ModelError("link " + std::to_string(raw(link.id)) + " connects container " +
                     std::to_string(raw(link.origin)) + " to itself");
  }
  auto id = link.id;
  links_.emplace(id, std::move(link));
  return id;
}

BasicRuleId Network::add(BasicRule rule) {
  require_fresh(basic_rules_, rule.id, "basic rule");
  auto arity_ok = [](std::size_t n) { return n >= 1 && n <= BasicRule::kMaxArity; };
  if (!arity_ok(rule.inputs.size()) || !arity_ok(rule.outputs.size())) {
    throw ModelError("basic rule " + std::to_string(raw(rule.id)) + " needs 1-4 inputs and 1-4 outputs");
  }
  for (FactId f : rule.inputs) lookup(facts_, f, "fact");
  for (FactId f : rule.outputs) lookup(facts_, f, "fact");
  auto id = rule.id;
  basic_rules_.emplace(id, std::move(rule));
  return id;
}

GenericRuleId Network::add(GenericRule rule) {
  require_fresh(generic_rules_, rule.id, "generic rule");
  check_generic_rule(rule);
  auto id = rule.id;
  generic_rules_.emplace(id, std::move(rule));
  return id;
}

ActionId Network::add(ActionStub action) {
  require_fresh(actions_, action.id, "action");
  auto id = action.id;
  actions_.emplace(id, std::move(action));
  return id;
}

void Network::check_condition_list(const std::vector<ConditionPair>& list, const char* which) const {
  std::set<CommonPropertyId> seen;
  for (const auto& pair : list) {
    lookup(properties_, pair.property, "common property");
    if (!seen.insert(pair.property).second) {
      throw ModelError(std::string("common property ") + std::to_string(raw(pair.property)) +
                       " repeated in " + which);
    }
  }
}

void Network::check_generic_rule(const GenericRule& rule) const {
  check_condition_list(rule.before_one, "before_one");
  check_condition_list(rule.before_two, "before_two");
  check_condition_list(rule.after_one, "after_one");
  check_condition_list(rule.after_two, "after_two");
}

CommonPropertyId Network::add_common_property(std::string description) {
  return add(CommonProperty{next_common_property_id(), std::move(description)});
}

FactId Network::add_instance_fact(CommonPropertyId property, bool value) {
  return add(Fact{next_fact_id(), value, property});
}

FactId Network::add_plain_fact(std::string description, bool value) {
  return add(Fact{next_fact_id(), value, std::move(description)});
}

ContainerId Network::add_container(std::string description) {
  return add(Container{next_container_id(), std::move(description), {}});
}

LinkId Network::add_link(ContainerId origin, ContainerId destination, std::string description) {
  return add(Link{next_link_id(), origin, destination, std::move(description)});
}

CommonPropertyId Network::next_common_property_id() const { return next_id(properties_); }
FactId Network::next_fact_id() const { return next_id(facts_); }
ContainerId Network::next_container_id() const { return next_id(containers_); }
LinkId Network::next_link_id() const { return next_id(links_); }
BasicRuleId Network::next_basic_rule_id() const { return next_id(basic_rules_); }
GenericRuleId Network::next_generic_rule_id() const { return next_id(generic_rules_); }
ActionId Network::next_action_id() const { return next_id(actions_); }

void Network::attach_fact(ContainerId container, FactId fact) {
  lookup(containers_, container, "container");
  lookup(facts_, fact, "fact");
  if (auto it = owners_.find(fact); it != owners_.end()) {
    throw ModelError("fact " + std::to_string(raw(fact)) + " is already attached to container " +
                     std::to_string(raw(it->second)));
  }
  containers_.at(container).facts.push_back(fact);
  owners_.emplace(fact, container);
}

std::vector<FactId> Network::facts_with_property(ContainerId container, CommonPropertyId property) const {
  std::vector<FactId> out;
  for (FactId f : lookup(containers_, container, "container").facts) {
    if (facts_.at(f).property() == property) out.push_back(f);
  }
  return out;
}

const CommonProperty& Network::common_property(CommonPropertyId id) const {
  return lookup(properties_, id, "common property");
}
const Fact& Network::fact(FactId id) const { return lookup(facts_, id, "fact"); }
const Container& Network::container(ContainerId id) const { return lookup(containers_, id, "container"); }
const Link& Network::link(LinkId id) const { return lookup(links_, id, "link"); }
const BasicRule& Network::basic_rule(BasicRuleId id) const { return lookup(basic_rules_, id, "basic rule"); }
const GenericRule& Network::generic_rule(GenericRuleId id) const {
  return lookup(generic_rules_, id, "generic rule");
}
const ActionStub& Network::action(ActionId id) const { return lookup(actions_, id, "action"); }

void Network::set_fact_value(FactId id, bool value) {
  lookup(facts_, id, "fact");
  facts_.at(id).value = value;
}

void Network::replace_generic_rule(GenericRule rule) {
  lookup(generic_rules_, rule.id, "generic rule");
  check_generic_rule(rule);
  generic_rules_.at(rule.id) = std::move(rule);
}

std::optional<ContainerId> Network::owner(FactId fact) const {
  if (auto it = owners_.find(fact); it != owners_.end()) return it->second;
  return std::nullopt;
}

void Network::set_endpoints(ContainerId start, ContainerId end) {
  lookup(containers_, start, "container");
  lookup(containers_, end, "container");
  if (start == end) throw ModelError("start and end container must differ");
  start_ = start;
  end_ = end;
  shortest_path_.reset();
}

void Network::set_start(ContainerId start) {
  lookup(containers_, start, "container");
  if (end_ == start) throw ModelError("start and end container must differ");
  start_ = start;
  shortest_path_.reset();
}

void Network::set_end(ContainerId end) {
  lookup(containers_, end, "container");
  if (start_ == end) throw ModelError("start and end container must differ");
  end_ = end;
  shortest_path_.reset();
}

void Network::set_shortest_path(std::vector<LinkId> path) {
  if (!start_ || !end_) throw ModelError("shortest path requires start and end containers");
  if (path.empty()) throw ModelError("shortest path is empty");
  ContainerId at = *start_;
  for (LinkId id : path) {
    const Link& l = lookup(links_, id, "link");
    if (l.origin != at) {
      throw ModelError("shortest path breaks at link " + std::to_string(raw(id)));
    }
    at = l.destination;
  }
  if (at != *end_) throw ModelError("shortest path does not finish at the end container");
  shortest_path_ = std::move(path);
}

void Network::clear_links() {
  links_.clear();
  shortest_path_.reset();
}

std::vector<std::string> find_integrity_problems(const Network& network) {
  std::vector<std::string> problems;
  auto problem = [&](std::string msg) { problems.push_back(std::move(msg)); };

  for (const auto& [id, p] : network.common_properties()) {
    if (p.id != id) problem("common property key mismatch at " + std::to_string(raw(id)));
    if (p.description.empty()) problem("common property " + std::to_string(raw(id)) + " has no description");
  }
  for (const auto& [id, f] : network.facts()) {
    if (f.id != id) problem("fact key mismatch at " + std::to_string(raw(id)));
    if (auto p = f.property(); p && !network.common_properties().contains(*p)) {
      problem("fact " + std::to_string(raw(id)) + " references missing common property " +
              std::to_string(raw(*p)));
    }
  }

  std::map<FactId, ContainerId> seen;
  for (const auto& [id, c] : network.containers()) {
    if (c.id != id) problem("container key mismatch at " + std::to_string(raw(id)));
    for (FactId f : c.facts) {
      if (!network.facts().contains(f)) {
        problem("container " + std::to_string(raw(id)) + " holds missing fact " + std::to_string(raw(f)));
      }
      if (!seen.emplace(f, id).second) {
        problem("fact " + std::to_string(raw(f)) + " attached more than once");
      }
      if (network.owner(f) != id) {
        problem("ownership index disagrees for fact " + std::to_string(raw(f)));
      }
    }
  }
  for (const auto& [f, owner] : seen) {
    (void)owner;
    if (!network.owner(f)) problem("fact " + std::to_string(raw(f)) + " attached but not indexed");
  }

  for (const auto& [id, l] : network.links()) {
    if (l.id != id) problem("link key mismatch at " + std::to_string(raw(id)));
    if (!network.containers().contains(l.origin) || !network.containers().contains(l.destination)) {
      problem("link " + std::to_string(raw(id)) + " has a dangling endpoint");
    }
    if (l.origin == l.destination) problem("link " + std::to_string(raw(id)) + " is a self-link");
  }

  for (const auto& [id, r] : network.basic_rules()) {
    auto arity_ok = [](std::size_t n) { return n >= 1 && n <= BasicRule::kMaxArity; };
    if (!arity_ok(r.inputs.size()) || !arity_ok(r.outputs.size())) {
      problem("basic rule " + std::to_string(raw(id)) + " has bad arity");
    }
    for (const auto* list : {&r.inputs, &r.outputs}) {
      for (FactId f : *list) {
        if (!network.facts().contains(f)) {
          problem("basic rule " + std::to_string(raw(id)) + " references missing fact " + std::to_string(raw(f)));
        }
      }
    }
  }

  for (const auto& [id, r] : network.generic_rules()) {
    for (const auto* list : {&r.before_one, &r.before_two, &r.after_one, &r.after_two}) {
      std::set<CommonPropertyId> in_list;
      for (const auto& pair : *list) {
        if (!network.common_properties().contains(pair.property)) {
          problem("generic rule " + std::to_string(raw(id)) + " references missing common property " +
                  std::to_string(raw(pair.property)));
        }
        if (!in_list.insert(pair.property).second) {
          problem("generic rule " + std::to_string(raw(id)) + " repeats common property " +
                  std::to_string(raw(pair.property)));
        }
      }
    }
  }

  auto start = network.start();
  auto end = network.end();
  if (start && !network.containers().contains(*start)) problem("start container does not exist");
  if (end && !network.containers().contains(*end)) problem("end container does not exist");
  if (start && end && *start == *end) problem("start and end container coincide");

  if (const auto& path = network.shortest_path()) {
    if (!start || !end || path->empty()) {
      problem("shortest path set without endpoints or empty");
    } else {
      ContainerId at = *start;
      for (LinkId id : *path) {
        auto it = network.links().find(id);
        if (it == network.links().end() || it->second.origin != at) {
          problem("shortest path breaks at link " + std::to_string(raw(id)));
          break;
        }
        at = it->second.destination;
      }
      if (at != *end) problem("shortest path does not reach the end container");
    }
  }
  return problems;
}

}  // namespace blackboard
