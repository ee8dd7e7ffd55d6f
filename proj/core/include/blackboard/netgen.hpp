#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "blackboard/model.hpp"
#include "blackboard/params.hpp"
#include "blackboard/rng.hpp"

namespace blackboard {

enum class RuleMethod { Uniform, Random, Hybrid };

/// Longest path depth any search is allowed to explore.
inline constexpr std::size_t kMaxSearchDepth = 1000;

/// Minimum accepted start -> end path length: floor(container count / 2).
std::size_t minimum_path_length(const Network& network);

/// Creates the common properties ("cp<i>") and instance facts, each fact bound
/// to a uniformly drawn property with a random initial value.
void generate_properties_and_facts(Network& network, const GenerationParams& params, Rng& rng);

/// Draws the rule method uniformly from the three, then builds the rule.
GenericRule generate_generic_rule(const GenerationParams& params, Rng& rng, GenericRuleId id);

/// Builds a rule with a fixed method. Each condition list holds
/// properties_per_rule distinct properties.
GenericRule generate_generic_rule(const GenerationParams& params, Rng& rng, GenericRuleId id, RuleMethod method);

/// Attaches every fact to exactly one container.
///   Uniform: containers take turns in id order, each drawing a random
///            remaining fact, until the pool is empty.
///   Random:  each fact, in id order, goes to a random container.
void assign_facts(Network& network, FactAssignment method, Rng& rng);

/// Two distinct containers, uniformly over ordered pairs.
std::pair<ContainerId, ContainerId> pick_endpoints(std::span<const ContainerId> containers, Rng& rng);

/// Creates link_count links and retries until the network is traversable.
/// Returns the number of attempts used; throws GenerationError once
/// params.max_link_attempts is exhausted.
std::size_t generate_links(Network& network, const GenerationParams& params, Rng& rng);

/// True iff a depth-first search finds a simple start -> end path of at least
/// minimum_path_length() links without going deeper than kMaxSearchDepth.
bool validate_traversability(const Network& network);

/// Full pipeline: properties and facts, generic rules, containers, fact
/// assignment, endpoints, links. Pure function of (params, seed).
Network generate_network(const GenerationParams& params, std::uint64_t seed);

}  // namespace blackboard
