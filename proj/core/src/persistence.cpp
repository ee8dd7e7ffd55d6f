#include "blackboard/persistence.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "blackboard/errors.hpp"

namespace blackboard {

namespace fs = std::filesystem;

namespace {

void check_token(std::string_view text, const char* what) {
  if (text.find_first_of(",\n\r") != std::string_view::npos) {
    throw ModelError(std::string(what) + " '" + std::string(text) + "' contains a comma or line break");
  }
}

template <EntityId Id>
void append_ids(std::string& out, const std::vector<Id>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(raw(ids[i]));
  }
}

void append_conditions(std::string& out, const std::vector<ConditionPair>& list) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(raw(list[i].property));
    out += '-';
    out += bool_token(list[i].desired);
  }
}

class LineBuilder {
 public:
  explicit LineBuilder(std::string& out) : out_(out) {}

  LineBuilder& field(std::string_view text) {
    if (!first_) out_ += ',';
    out_ += text;
    first_ = false;
    return *this;
  }
  template <EntityId Id>
  LineBuilder& field(Id id) {
    return field(std::to_string(raw(id)));
  }
  LineBuilder& flag(bool value) { return field(bool_token(value)); }
  void end() { out_ += '\n'; }

 private:
  std::string& out_;
  bool first_ = true;
};

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const auto at = text.find(separator, begin);
    if (at == std::string_view::npos) {
      parts.push_back(text.substr(begin));
      return parts;
    }
    parts.push_back(text.substr(begin, at - begin));
    begin = at + 1;
  }
}

class LineParser {
 public:
  LineParser(std::size_t number, std::string_view line) : number_(number), tokens_(split(line, ',')) {}

  std::string_view type() const { return tokens_[0]; }
  std::string_view action() const { return tokens_.size() > 1 ? tokens_[1] : std::string_view{}; }

  void expect_values(std::size_t count) const {
    if (tokens_.size() != count + 2) {
      fail("expected " + std::to_string(count) + " values after '" + std::string(type()) + "," +
           std::string(action()) + "', found " + std::to_string(tokens_.size() < 2 ? 0 : tokens_.size() - 2));
    }
  }
  void expect_action(std::string_view action) const {
    if (this->action() != action) {
      fail("unexpected action '" + std::string(this->action()) + "' for type '" + std::string(type()) + "'");
    }
  }

  std::string_view value(std::size_t i) const { return tokens_[i + 2]; }

  std::uint32_t number(std::string_view token) const {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      fail("bad integer token '" + std::string(token) + "'");
    }
    return v;
  }
  template <EntityId Id>
  Id id(std::size_t i) const {
    return Id{number(value(i))};
  }

  bool boolean(std::string_view token) const {
    if (token == "True") return true;
    if (token == "False") return false;
    fail("bad boolean token '" + std::string(token) + "'");
  }
  bool boolean_at(std::size_t i) const { return boolean(value(i)); }

  template <EntityId Id>
  std::vector<Id> id_list(std::size_t i) const {
    std::vector<Id> out;
    if (value(i).empty()) return out;
    for (auto part : split(value(i), '.')) out.push_back(Id{number(part)});
    return out;
  }

  std::vector<ConditionPair> conditions(std::size_t i) const {
    std::vector<ConditionPair> out;
    if (value(i).empty()) return out;
    for (auto part : split(value(i), '.')) {
      const auto dash = part.find('-');
      if (dash == std::string_view::npos) fail("bad condition pair '" + std::string(part) + "'");
      out.push_back({CommonPropertyId{number(part.substr(0, dash))}, boolean(part.substr(dash + 1))});
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(number_, what); }

  std::size_t line_number() const { return number_; }

 private:
  std::size_t number_;
  std::vector<std::string_view> tokens_;
};

// Runs `body` for every line, translating model violations into ParseErrors
// that carry the line number.
template <typename Body>
void for_each_line(std::string_view text, Body&& body) {
  std::size_t number = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    ++number;
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(begin, end - begin);
    begin = end + 1;
    if (line.empty()) throw ParseError(number, "empty line");
    LineParser parser(number, line);
    try {
      body(parser);
    } catch (const ModelError& e) {
      throw ParseError(number, e.what());
    }
  }
}

}  // namespace

std::string_view bool_token(bool value) { return value ? "True" : "False"; }

std::string serialize_network(const Network& network, const Settings& settings) {
  std::string out;
  for (const auto& s : settings) {
    check_token(s.name, "setting name");
    check_token(s.value, "setting value");
    LineBuilder(out).field("setting").field(s.name).field(s.value).end();
  }
  for (const auto& [id, p] : network.common_properties()) {
    check_token(p.description, "common property description");
    LineBuilder(out).field("commonproperty").field("addition").field(id).field(p.description).end();
  }
  for (const auto& [id, f] : network.facts()) {
    if (auto property = f.property()) {
      LineBuilder(out).field("fact").field("addition").field(id).field(*property).flag(f.value).end();
    } else {
      const auto& description = std::get<std::string>(f.binding);
      check_token(description, "fact description");
      LineBuilder(out).field("plainfact").field("addition").field(id).field(description).flag(f.value).end();
    }
  }
  for (const auto& [id, c] : network.containers()) {
    check_token(c.description, "container description");
    LineBuilder(out).field("container").field("addition").field(id).field(c.description).end();
  }
  for (const auto& [id, c] : network.containers()) {
    for (FactId f : c.facts) LineBuilder(out).field("attach").field("addition").field(id).field(f).end();
  }
  for (const auto& [id, l] : network.links()) {
    check_token(l.description, "link description");
    LineBuilder(out)
        .field("link")
        .field("addition")
        .field(id)
        .field(l.origin)
        .field(l.destination)
        .field(l.description)
        .end();
  }
  for (const auto& [id, r] : network.generic_rules()) {
    check_token(r.title, "generic rule title");
    LineBuilder(out)
        .field("genericrule")
        .field("addition")
        .field(id)
        .field(r.title)
        .flag(r.create_if_not_present)
        .flag(r.ignore_if_not_present);
    for (const auto* list : {&r.before_one, &r.before_two, &r.after_one, &r.after_two}) {
      out += ',';
      append_conditions(out, *list);
    }
    out += '\n';
  }
  for (const auto& [id, r] : network.basic_rules()) {
    LineBuilder(out).field("basicrule").field("addition").field(id);
    out += ',';
    append_ids(out, r.inputs);
    out += ',';
    append_ids(out, r.outputs);
    out += '\n';
  }
  for (const auto& [id, a] : network.actions()) {
    check_token(a.description, "action description");
    LineBuilder(out).field("action").field("addition").field(id).field(a.description).end();
  }
  if (auto start = network.start()) LineBuilder(out).field("start container").field("addition").field(*start).end();
  if (auto end = network.end()) LineBuilder(out).field("end container").field("addition").field(*end).end();
  if (const auto& path = network.shortest_path()) {
    LineBuilder(out).field("shortest path").field("addition");
    out += ',';
    append_ids(out, *path);
    out += '\n';
  }
  return out;
}

Snapshot parse_network(std::string_view text) {
  Snapshot snapshot;
  Network& net = snapshot.network;
  for_each_line(text, [&](const LineParser& p) {
    const auto type = p.type();
    if (type == "setting") {
      p.expect_values(1);
      snapshot.settings.push_back({std::string(p.action()), std::string(p.value(0))});
      return;
    }
    p.expect_action("addition");
    if (type == "commonproperty") {
      p.expect_values(2);
      net.add(CommonProperty{p.id<CommonPropertyId>(0), std::string(p.value(1))});
    } else if (type == "fact") {
      p.expect_values(3);
      net.add(Fact{p.id<FactId>(0), p.boolean_at(2), p.id<CommonPropertyId>(1)});
    } else if (type == "plainfact") {
      p.expect_values(3);
      net.add(Fact{p.id<FactId>(0), p.boolean_at(2), std::string(p.value(1))});
    } else if (type == "container") {
      p.expect_values(2);
      net.add(Container{p.id<ContainerId>(0), std::string(p.value(1)), {}});
    } else if (type == "attach") {
      p.expect_values(2);
      net.attach_fact(p.id<ContainerId>(0), p.id<FactId>(1));
    } else if (type == "link") {
      p.expect_values(4);
      net.add(Link{p.id<LinkId>(0), p.id<ContainerId>(1), p.id<ContainerId>(2), std::string(p.value(3))});
    } else if (type == "genericrule") {
      p.expect_values(8);
      GenericRule rule;
      rule.id = p.id<GenericRuleId>(0);
      rule.title = std::string(p.value(1));
      rule.create_if_not_present = p.boolean_at(2);
      rule.ignore_if_not_present = p.boolean_at(3);
      rule.before_one = p.conditions(4);
      rule.before_two = p.conditions(5);
      rule.after_one = p.conditions(6);
      rule.after_two = p.conditions(7);
      net.add(std::move(rule));
    } else if (type == "basicrule") {
      p.expect_values(3);
      net.add(BasicRule{p.id<BasicRuleId>(0), p.id_list<FactId>(1), p.id_list<FactId>(2)});
    } else if (type == "action") {
      p.expect_values(2);
      net.add(ActionStub{p.id<ActionId>(0), std::string(p.value(1))});
    } else if (type == "start container") {
      p.expect_values(1);
      net.set_start(p.id<ContainerId>(0));
    } else if (type == "end container") {
      p.expect_values(1);
      net.set_end(p.id<ContainerId>(0));
    } else if (type == "shortest path") {
      p.expect_values(1);
      net.set_shortest_path(p.id_list<LinkId>(0));
    } else {
      p.fail("unknown line type '" + std::string(type) + "'");
    }
  });
  return snapshot;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + file.string());
  return std::move(buffer).str();
}

void write_file(const fs::path& file, std::string_view contents) {
  std::error_code ec;
  if (file.has_parent_path()) {
    fs::create_directories(file.parent_path(), ec);
    if (ec) throw IoError("cannot create " + file.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("cannot write " + file.string());
}

WrittenFile save_initial(const Network& network, const Settings& settings, const fs::path& directory,
                         std::string_view test_id) {
  const auto text = serialize_network(network, settings);
  auto path = directory / "saves" / (std::string(test_id) + ".txt");
  write_file(path, text);
  return {std::move(path), text.size()};
}

Snapshot load_snapshot(const fs::path& file) { return parse_network(read_file(file)); }

Network load_network(const fs::path& file) { return load_snapshot(file).network; }

std::string serialize_step(const TraversalStep& step) {
  std::string out;
  LineBuilder(out).field("link").field("current").field(step.link).end();
  for (const auto& changes : step.applied) {
    LineBuilder(out).field("genericrule").field("run").field(changes.rule).end();
    for (const auto& r : changes.records) {
      if (r.kind == ChangeKind::FactAdded) {
        LineBuilder(out)
            .field("fact")
            .field("addition")
            .field(r.fact)
            .field(r.property)
            .flag(r.new_value)
            .field(r.container)
            .end();
      } else {
        LineBuilder(out).field("fact").field("change").field(r.fact).flag(r.new_value).end();
      }
    }
  }
  return out;
}

WrittenFile write_change_file(const fs::path& directory, std::string_view test_id, const TraversalStep& step) {
  const auto text = serialize_step(step);
  auto path = directory / "changes" / (std::string(test_id) + "-" + std::to_string(step.index) + ".txt");
  write_file(path, text);
  return {std::move(path), text.size()};
}

ReplayedStep apply_change_file(Network& network, std::string_view text) {
  ReplayedStep step;
  bool saw_link = false;
  for_each_line(text, [&](const LineParser& p) {
    const auto type = p.type();
    if (!saw_link) {
      if (type != "link") p.fail("change file must start with a link line");
      p.expect_action("current");
      p.expect_values(1);
      step.link = p.id<LinkId>(0);
      network.link(step.link);
      saw_link = true;
      return;
    }
    if (type == "genericrule") {
      p.expect_action("run");
      p.expect_values(1);
      const auto rule = p.id<GenericRuleId>(0);
      network.generic_rule(rule);
      step.applied.push_back({rule, {}});
      return;
    }
    if (type != "fact") p.fail("unexpected line type '" + std::string(type) + "' in change file");
    if (step.applied.empty()) p.fail("fact change before any rule line");
    ChangeRecord record;
    if (p.action() == "addition") {
      p.expect_values(4);
      record = {ChangeKind::FactAdded, p.id<ContainerId>(3), p.id<FactId>(0), p.id<CommonPropertyId>(1),
                p.boolean_at(2)};
    } else if (p.action() == "change") {
      p.expect_values(2);
      const auto fact = p.id<FactId>(0);
      const auto owner = network.owner(fact);
      const auto property = network.fact(fact).property();
      if (!owner || !property) p.fail("changed fact " + std::string(p.value(0)) + " is not an attached instance fact");
      record = {ChangeKind::FactChanged, *owner, fact, *property, p.boolean_at(1)};
    } else {
      p.fail("unknown fact action '" + std::string(p.action()) + "'");
    }
    ChangeSet single{step.applied.back().rule, {record}};
    apply_change_set(network, single);
    step.applied.back().records.push_back(record);
  });
  if (!saw_link) throw ParseError(1, "empty change file");
  return step;
}

std::string network_digest(const Network& network) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_network(network)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace blackboard
