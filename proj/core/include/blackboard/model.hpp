#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blackboard/ids.hpp"

namespace blackboard {

/// Shared fact type. Instance facts take their meaning from it.
struct CommonProperty {
  CommonPropertyId id{};
  std::string description;

  bool operator==(const CommonProperty&) const = default;
};

/// Boolean node. Bound either to a common property (instance fact) or to its
/// own description (plain fact), never both.
struct Fact {
  FactId id{};
  bool value = false;
  std::variant<CommonPropertyId, std::string> binding;

  std::optional<CommonPropertyId> property() const {
    if (const auto* p = std::get_if<CommonPropertyId>(&binding)) return *p;
    return std::nullopt;
  }
  bool is_instance() const { return std::holds_alternative<CommonPropertyId>(binding); }

  bool operator==(const Fact&) const = default;
};

struct Container {
  ContainerId id{};
  std::string description;
  std::vector<FactId> facts;  // attachment order

  bool operator==(const Container&) const = default;
};

/// Directional relationship: origin is "container one", destination is "container two".
struct Link {
  LinkId id{};
  ContainerId origin{};
  ContainerId destination{};
  std::string description;

  bool operator==(const Link&) const = default;
};

struct BasicRule {
  static constexpr std::size_t kMaxArity = 4;

  BasicRuleId id{};
  std::vector<FactId> inputs;
  std::vector<FactId> outputs;

  bool operator==(const BasicRule&) const = default;
};

struct ConditionPair {
  CommonPropertyId property{};
  bool desired = false;

  bool operator==(const ConditionPair&) const = default;
};

/// Instance-agnostic rule over a (container one, container two) pair.
struct GenericRule {
  GenericRuleId id{};
  std::string title;
  std::vector<ConditionPair> before_one;
  std::vector<ConditionPair> before_two;
  std::vector<ConditionPair> after_one;
  std::vector<ConditionPair> after_two;
  bool ignore_if_not_present = false;
  bool create_if_not_present = false;

  bool operator==(const GenericRule&) const = default;
};

/// Placeholder for actuation. Stored and serialized, never executed.
struct ActionStub {
  ActionId id{};
  std::string description;

  bool operator==(const ActionStub&) const = default;
};

/// The complete blackboard state. A plain value: copyable, comparable, no
/// internal sharing. Every mutator keeps all cross-references resolvable and
/// throws ModelError otherwise, leaving the network unchanged.
class Network {
 public:
  // Explicit-id insertion. The entity must satisfy its invariants against the
  // current contents.
  CommonPropertyId add(CommonProperty property);
  FactId add(Fact fact);
  ContainerId add(Container container);
  LinkId add(Link link);
  BasicRuleId add(BasicRule rule);
  GenericRuleId add(GenericRule rule);
  ActionId add(ActionStub action);

  // Sequential-id conveniences; the new id is one past the current maximum.
  CommonPropertyId add_common_property(std::string description);
  FactId add_instance_fact(CommonPropertyId property, bool value);
  FactId add_plain_fact(std::string description, bool value);
  ContainerId add_container(std::string description);
  LinkId add_link(ContainerId origin, ContainerId destination, std::string description);

  CommonPropertyId next_common_property_id() const;
  FactId next_fact_id() const;
  ContainerId next_container_id() const;
  LinkId next_link_id() const;
  BasicRuleId next_basic_rule_id() const;
  GenericRuleId next_generic_rule_id() const;
  ActionId next_action_id() const;

  /// Appends the fact to the container. A fact lives in at most one container.
  void attach_fact(ContainerId container, FactId fact);

  /// Attached instance facts bound to `property`, in attachment order.
  std::vector<FactId> facts_with_property(ContainerId container, CommonPropertyId property) const;

  const CommonProperty& common_property(CommonPropertyId id) const;
  const Fact& fact(FactId id) const;
  const Container& container(ContainerId id) const;
  const Link& link(LinkId id) const;
  const BasicRule& basic_rule(BasicRuleId id) const;
  const GenericRule& generic_rule(GenericRuleId id) const;
  const ActionStub& action(ActionId id) const;

  void set_fact_value(FactId id, bool value);
  /// Replaces an existing generic rule with the same id.
  void replace_generic_rule(GenericRule rule);

  std::optional<ContainerId> owner(FactId fact) const;

  const std::map<CommonPropertyId, CommonProperty>& common_properties() const { return properties_; }
  const std::map<FactId, Fact>& facts() const { return facts_; }
  const std::map<ContainerId, Container>& containers() const { return containers_; }
  const std::map<LinkId, Link>& links() const { return links_; }
  const std::map<BasicRuleId, BasicRule>& basic_rules() const { return basic_rules_; }
  const std::map<GenericRuleId, GenericRule>& generic_rules() const { return generic_rules_; }
  const std::map<ActionId, ActionStub>& actions() const { return actions_; }

  std::optional<ContainerId> start() const { return start_; }
  std::optional<ContainerId> end() const { return end_; }
  void set_endpoints(ContainerId start, ContainerId end);
  void set_start(ContainerId start);
  void set_end(ContainerId end);

  const std::optional<std::vector<LinkId>>& shortest_path() const { return shortest_path_; }
  /// The path must be a non-empty link chain from start to end.
  void set_shortest_path(std::vector<LinkId> path);
  void clear_shortest_path() { shortest_path_.reset(); }

  /// Drops every link and the stored shortest path.
  void clear_links();

  bool operator==(const Network&) const = default;

 private:
  void check_condition_list(const std::vector<ConditionPair>& list, const char* which) const;
  void check_generic_rule(const GenericRule& rule) const;

  std::map<CommonPropertyId, CommonProperty> properties_;
  std::map<FactId, Fact> facts_;
  std::map<ContainerId, Container> containers_;
  std::map<LinkId, Link> links_;
  std::map<BasicRuleId, BasicRule> basic_rules_;
  std::map<GenericRuleId, GenericRule> generic_rules_;
  std::map<ActionId, ActionStub> actions_;
  std::map<FactId, ContainerId> owners_;
  std::optional<ContainerId> start_;
  std::optional<ContainerId> end_;
  std::optional<std::vector<LinkId>> shortest_path_;
};

/// Full-scan referential integrity check. Returns one message per problem;
/// empty means the network is consistent.
std::vector<std::string> find_integrity_problems(const Network& network);

}  // namespace blackboard
