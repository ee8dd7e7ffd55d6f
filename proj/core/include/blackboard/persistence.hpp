#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "blackboard/model.hpp"
#include "blackboard/params.hpp"
#include "blackboard/rule_engine.hpp"
#include "blackboard/traversal.hpp"

namespace blackboard {

// Plain-text line format, one record per line, `type,action,value1,value2,...`,
// UTF-8, each line terminated by a single '\n'. Booleans are `True`/`False`.
//
//   setting,<name>,<value>
//   commonproperty,addition,<id>,<description>
//   fact,addition,<id>,<common property id>,<value>
//   plainfact,addition,<id>,<description>,<value>
//   container,addition,<id>,<description>
//   attach,addition,<container id>,<fact id>
//   link,addition,<id>,<origin>,<destination>,<description>
//   genericrule,addition,<id>,<title>,<create>,<ignore>,<b1>,<b2>,<a1>,<a2>
//   basicrule,addition,<id>,<inputs>,<outputs>
//   action,addition,<id>,<description>
//   start container,addition,<id>
//   end container,addition,<id>
//   shortest path,addition,<link ids>
//
// Condition lists are `.`-separated `<property>-<value>` pairs; id lists are
// `.`-separated. An empty list is an empty field.
//
// Change files hold one traversal step:
//
//   link,current,<link id>
//   genericrule,run,<rule id>                      one per rule that ran,
//   fact,addition,<id>,<property>,<value>,<container>   followed by its
//   fact,change,<id>,<value>                             change records

std::string_view bool_token(bool value);

/// Save-file text for a network. Throws ModelError if a text field contains
/// a comma or line break.
std::string serialize_network(const Network& network, const Settings& settings = {});

struct Snapshot {
  Settings settings;
  Network network;

  bool operator==(const Snapshot&) const = default;
};

/// Throws ParseError (with line number) on malformed input or a dangling
/// reference.
Snapshot parse_network(std::string_view text);

struct WrittenFile {
  std::filesystem::path path;
  std::uintmax_t bytes = 0;
};

/// Writes `<directory>/saves/<test_id>.txt`.
WrittenFile save_initial(const Network& network, const Settings& settings, const std::filesystem::path& directory,
                         std::string_view test_id);

Snapshot load_snapshot(const std::filesystem::path& file);
Network load_network(const std::filesystem::path& file);

std::string serialize_step(const TraversalStep& step);

/// Writes `<directory>/changes/<test_id>-<step.index>.txt`.
WrittenFile write_change_file(const std::filesystem::path& directory, std::string_view test_id,
                              const TraversalStep& step);

struct ReplayedStep {
  LinkId link{};
  std::vector<ChangeSet> applied;
};

/// Applies one change file's records to the network, in file order, and
/// returns them fully resolved.
ReplayedStep apply_change_file(Network& network, std::string_view text);

/// FNV-1a 64 of the serialized network, as 16 hex digits.
std::string network_digest(const Network& network);

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::string_view contents);

}  // namespace blackboard
