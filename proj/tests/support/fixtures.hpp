#pragma once

#include "blackboard/model.hpp"

namespace blackboard::testing {

// Human-resources promotion model: an employee container linked to a team
// container, and one generic rule that promotes the employee.
struct PromotionModel {
  Network network;
  CommonPropertyId is_employee{}, is_manager{}, is_team{}, has_manager{};
  ContainerId john_doe{}, front_desk{};
  FactId john_is_employee{}, desk_is_team{}, desk_has_manager{};
  LinkId john_to_desk{};
  GenericRuleId promote{};
};

inline PromotionModel make_promotion_model(bool ignore_if_not_present = true, bool create_if_not_present = true) {
  PromotionModel m;
  Network& n = m.network;
  m.is_employee = n.add_common_property("isEmployee");
  m.is_manager = n.add_common_property("isManager");
  m.is_team = n.add_common_property("isTeam");
  m.has_manager = n.add_common_property("hasManager");

  m.john_doe = n.add_container("John Doe");
  m.front_desk = n.add_container("Front Desk");

  // John Doe has no isManager fact; the rule has to create it.
  m.john_is_employee = n.add_instance_fact(m.is_employee, true);
  n.attach_fact(m.john_doe, m.john_is_employee);
  m.desk_is_team = n.add_instance_fact(m.is_team, true);
  n.attach_fact(m.front_desk, m.desk_is_team);
  m.desk_has_manager = n.add_instance_fact(m.has_manager, false);
  n.attach_fact(m.front_desk, m.desk_has_manager);

  m.john_to_desk = n.add_link(m.john_doe, m.front_desk, "member of");

  GenericRule rule;
  rule.id = n.next_generic_rule_id();
  rule.title = "Promote Employee";
  rule.before_one = {{m.is_employee, true}, {m.is_manager, false}};
  rule.before_two = {{m.is_team, true}, {m.has_manager, false}};
  rule.after_one = {{m.is_manager, true}};
  rule.after_two = {{m.has_manager, true}};
  rule.ignore_if_not_present = ignore_if_not_present;
  rule.create_if_not_present = create_if_not_present;
  m.promote = n.add(rule);
  return m;
}

}  // namespace blackboard::testing
