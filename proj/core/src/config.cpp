#include <algorithm>
#include <cctype>
#include <charconv>

#include "blackboard/errors.hpp"
#include "blackboard/harness.hpp"
#include "blackboard/persistence.hpp"

namespace blackboard {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_trimmed(std::string_view text, char separator) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const auto at = text.find(separator, begin);
    parts.emplace_back(trim(text.substr(begin, at == std::string_view::npos ? at : at - begin)));
    if (at == std::string_view::npos) return parts;
    begin = at + 1;
  }
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool is_parameter(std::string_view name) {
  const auto& names = setting_names();
  return std::find(names.begin(), names.end(), name) != names.end() || name == "max_link_attempts";
}

struct KeyValue {
  std::size_t line;
  std::string key;
  std::string value;
};

// Splits into (section, key, value) triples, dropping blanks and # comments.
template <typename Body>
void for_each_entry(std::string_view text, Body&& body) {
  std::string section;
  std::size_t number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    ++number;
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(begin, end - begin);
    begin = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(number) + ": unterminated section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "sweep") throw ConfigError("line " + std::to_string(number) + ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    body(section, KeyValue{number, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))});
  }
}

void apply_base_key(ExperimentConfig& config, const KeyValue& kv) {
  const std::string_view key = kv.key;
  if (is_parameter(key)) {
    apply_setting(config.base, key, kv.value);
  } else if (key == "tests_per_combination") {
    config.tests_per_combination = parse_unsigned<std::size_t>(key, kv.value);
  } else if (key == "master_seed") {
    config.master_seed = parse_unsigned<std::uint64_t>(key, kv.value);
  } else if (key == "jobs") {
    config.jobs = parse_unsigned<unsigned>(key, kv.value);
  } else if (key == "tick_ns") {
    config.tick_ns = parse_unsigned<std::int64_t>(key, kv.value);
  } else if (key == "out") {
    config.out_dir = kv.value;
  } else if (key == "assignments") {
    config.assignments.clear();
    for (const auto& item : split_trimmed(kv.value, ',')) config.assignments.push_back(parse_fact_assignment(item));
  } else {
    throw ConfigError("line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
  }
}

SweepAxis parse_axis(const KeyValue& kv) {
  SweepAxis axis;
  axis.parameters = split_trimmed(kv.key, '+');
  for (const auto& p : axis.parameters) {
    if (!is_parameter(p)) throw ConfigError("line " + std::to_string(kv.line) + ": cannot sweep '" + p + "'");
  }
  for (const auto& level : split_trimmed(kv.value, ',')) {
    auto values = split_trimmed(level, ':');
    if (values.size() != axis.parameters.size()) {
      throw ConfigError("line " + std::to_string(kv.line) + ": level '" + level + "' needs " +
                        std::to_string(axis.parameters.size()) + " ':'-separated values");
    }
    axis.levels.push_back(std::move(values));
  }
  return axis;
}

}  // namespace

void ExperimentConfig::validate() const {
  base.validate();
  if (tests_per_combination == 0) throw ConfigError("tests_per_combination must be at least 1");
  if (tests_per_combination > 0xffffffffULL) throw ConfigError("tests_per_combination is too large");
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  if (tick_ns <= 0) throw ConfigError("tick_ns must be positive");
  for (const auto& c : expand_combinations(*this)) c.params.validate();
}

std::vector<Combination> expand_combinations(const ExperimentConfig& config) {
  std::vector<FactAssignment> methods = config.assignments;
  if (methods.empty()) methods.push_back(config.base.fact_assignment);

  std::vector<Combination> out;
  auto emit = [&](const GenerationParams& params) {
    for (auto method : methods) {
      Combination c{out.size(), params};
      c.params.fact_assignment = method;
      out.push_back(std::move(c));
    }
  };
  if (config.sweep.empty()) {
    emit(config.base);
    return out;
  }
  for (const auto& axis : config.sweep) {
    for (const auto& level : axis.levels) {
      GenerationParams params = config.base;
      for (std::size_t i = 0; i < axis.parameters.size(); ++i) apply_setting(params, axis.parameters[i], level[i]);
      emit(params);
    }
  }
  return out;
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig config;
  config.assignments = {FactAssignment::Uniform, FactAssignment::Random};
  // One link per container leaves a single out-edge per node; a qualifying
  // path then turns up only once in tens of thousands of layouts.
  config.base.max_link_attempts = 100000;
  auto axis = [](std::vector<std::string> parameters, std::vector<std::vector<std::string>> levels) {
    return SweepAxis{std::move(parameters), std::move(levels)};
  };
  config.sweep = {
      axis({"fact_count"}, {{"50"}, {"100"}, {"150"}, {"200"}}),
      axis({"rule_count"}, {{"50"}, {"100"}, {"150"}, {"200"}}),
      axis({"link_count"}, {{"50"}, {"100"}, {"150"}, {"200"}, {"250"}, {"300"}}),
      // Links scale with containers so that a floor(C/2)-link path stays feasible.
      axis({"container_count", "link_count"}, {{"50", "100"}, {"100", "200"}, {"150", "300"}, {"200", "400"}}),
      axis({"common_property_count"}, {{"20"}, {"50"}, {"100"}, {"150"}}),
      axis({"properties_per_rule"}, {{"1"}, {"2"}, {"5"}, {"10"}}),
      axis({"hybrid_rule_chance"}, {{"0.25"}, {"0.5"}, {"0.75"}, {"1"}}),
      axis({"ignore_chance"}, {{"0.25"}, {"0.5"}, {"0.75"}, {"1"}}),
      axis({"create_chance"}, {{"0.25"}, {"0.5"}, {"0.75"}, {"1"}}),
  };
  return config;
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig config;
  for_each_entry(text, [&](const std::string& section, const KeyValue& kv) {
    if (section.empty()) {
      apply_base_key(config, kv);
    } else {
      config.sweep.push_back(parse_axis(kv));
    }
  });
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  return parse_experiment_config(read_file(file));
}

std::string format_experiment_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& s : to_settings(config.base)) out += s.name + " = " + s.value + "\n";
  out += "max_link_attempts = " + std::to_string(config.base.max_link_attempts) + "\n";
  out += "tests_per_combination = " + std::to_string(config.tests_per_combination) + "\n";
  out += "master_seed = " + std::to_string(config.master_seed) + "\n";
  out += "jobs = " + std::to_string(config.jobs) + "\n";
  out += "tick_ns = " + std::to_string(config.tick_ns) + "\n";
  out += "out = " + config.out_dir.string() + "\n";
  if (!config.assignments.empty()) {
    out += "assignments = ";
    for (std::size_t i = 0; i < config.assignments.size(); ++i) {
      if (i) out += ", ";
      out += to_string(config.assignments[i]);
    }
    out += "\n";
  }
  if (!config.sweep.empty()) out += "\n[sweep]\n";
  for (const auto& axis : config.sweep) {
    for (std::size_t i = 0; i < axis.parameters.size(); ++i) out += (i ? " + " : "") + axis.parameters[i];
    out += " = ";
    for (std::size_t l = 0; l < axis.levels.size(); ++l) {
      if (l) out += ", ";
      for (std::size_t i = 0; i < axis.levels[l].size(); ++i) out += (i ? ":" : "") + axis.levels[l][i];
    }
    out += "\n";
  }
  return out;
}

GenerationParams parse_params(std::string_view text) {
  GenerationParams params;
  for_each_entry(text, [&](const std::string& section, const KeyValue& kv) {
    if (!section.empty()) throw ConfigError("line " + std::to_string(kv.line) + ": sections are not allowed here");
    if (!is_parameter(kv.key)) throw ConfigError("line " + std::to_string(kv.line) + ": unknown parameter '" + kv.key + "'");
    apply_setting(params, kv.key, kv.value);
  });
  params.validate();
  return params;
}

}  // namespace blackboard
