#include "blackboard/params.hpp"

#include <charconv>
#include <cmath>

#include "blackboard/errors.hpp"

namespace blackboard {

namespace {

std::size_t parse_count(std::string_view name, std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("setting " + std::string(name) + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

double parse_probability(std::string_view name, std::string_view text) {
  bool percent = !text.empty() && text.back() == '%';
  if (percent) text.remove_suffix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("setting " + std::string(name) + ": expected a probability, got '" + std::string(text) +
                      "'");
  }
  return percent ? value / 100.0 : value;
}

}  // namespace

std::string_view to_string(FactAssignment method) {
  return method == FactAssignment::Uniform ? "Uniform" : "Random";
}

FactAssignment parse_fact_assignment(std::string_view text) {
  if (text == "Uniform" || text == "uniform") return FactAssignment::Uniform;
  if (text == "Random" || text == "random") return FactAssignment::Random;
  throw ConfigError("unknown fact assignment method '" + std::string(text) + "'");
}

void GenerationParams::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be at least 1");
  };
  positive(fact_count, "fact_count");
  positive(rule_count, "rule_count");
  positive(link_count, "link_count");
  positive(container_count, "container_count");
  positive(common_property_count, "common_property_count");
  positive(properties_per_rule, "properties_per_rule");
  positive(max_link_attempts, "max_link_attempts");
  if (container_count < 2) throw ConfigError("container_count must be at least 2");
  if (properties_per_rule > common_property_count) {
    throw ConfigError("properties_per_rule exceeds common_property_count");
  }
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  probability(hybrid_rule_chance, "hybrid_rule_chance");
  probability(ignore_chance, "ignore_chance");
  probability(create_chance, "create_chance");
}

const std::vector<std::string_view>& setting_names() {
  static const std::vector<std::string_view> names = {
      "fact_count",          "rule_count",      "link_count",         "container_count",
      "common_property_count", "properties_per_rule", "fact_assignment", "hybrid_rule_chance",
      "ignore_chance",       "create_chance",
  };
  return names;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

Settings to_settings(const GenerationParams& p) {
  return {
      {"fact_count", std::to_string(p.fact_count)},
      {"rule_count", std::to_string(p.rule_count)},
      {"link_count", std::to_string(p.link_count)},
      {"container_count", std::to_string(p.container_count)},
      {"common_property_count", std::to_string(p.common_property_count)},
      {"properties_per_rule", std::to_string(p.properties_per_rule)},
      {"fact_assignment", std::string(to_string(p.fact_assignment))},
      {"hybrid_rule_chance", format_double(p.hybrid_rule_chance)},
      {"ignore_chance", format_double(p.ignore_chance)},
      {"create_chance", format_double(p.create_chance)},
  };
}

void apply_setting(GenerationParams& p, std::string_view name, std::string_view value) {
  if (name == "fact_count") p.fact_count = parse_count(name, value);
  else if (name == "rule_count") p.rule_count = parse_count(name, value);
  else if (name == "link_count") p.link_count = parse_count(name, value);
  else if (name == "container_count") p.container_count = parse_count(name, value);
  else if (name == "common_property_count") p.common_property_count = parse_count(name, value);
  else if (name == "properties_per_rule") p.properties_per_rule = parse_count(name, value);
  else if (name == "fact_assignment") p.fact_assignment = parse_fact_assignment(value);
  else if (name == "hybrid_rule_chance") p.hybrid_rule_chance = parse_probability(name, value);
  else if (name == "ignore_chance") p.ignore_chance = parse_probability(name, value);
  else if (name == "create_chance") p.create_chance = parse_probability(name, value);
  else if (name == "max_link_attempts") p.max_link_attempts = parse_count(name, value);
  else throw ConfigError("unknown setting '" + std::string(name) + "'");
}

GenerationParams params_from_settings(const Settings& settings) {
  GenerationParams p;
  for (const auto& s : settings) apply_setting(p, s.name, s.value);
  return p;
}

}  // namespace blackboard
