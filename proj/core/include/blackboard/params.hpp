#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace blackboard {

enum class FactAssignment { Uniform, Random };

std::string_view to_string(FactAssignment method);
FactAssignment parse_fact_assignment(std::string_view text);

/// Inputs of one generated network. Defaults are the standard experiment settings.
struct GenerationParams {
  std::size_t fact_count = 100;
  std::size_t rule_count = 100;  // generic rules
  std::size_t link_count = 100;
  std::size_t container_count = 50;
  std::size_t common_property_count = 50;
  std::size_t properties_per_rule = 10;  // per condition list
  FactAssignment fact_assignment = FactAssignment::Uniform;
  double hybrid_rule_chance = 0.5;
  double ignore_chance = 0.25;
  double create_chance = 0.25;

  /// Link-creation retries before generation gives up. Not a saved setting.
  std::size_t max_link_attempts = 1000;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  bool operator==(const GenerationParams&) const = default;
};

/// One `setting,<name>,<value>` save line.
struct Setting {
  std::string name;
  std::string value;

  bool operator==(const Setting&) const = default;
};

using Settings = std::vector<Setting>;

/// Names of the saved settings, in save-file order.
const std::vector<std::string_view>& setting_names();

Settings to_settings(const GenerationParams& params);

/// Sets one parameter by its setting name. Throws ConfigError for an unknown
/// name or an unparsable value.
void apply_setting(GenerationParams& params, std::string_view name, std::string_view value);

GenerationParams params_from_settings(const Settings& settings);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace blackboard
