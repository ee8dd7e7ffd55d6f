#include <gtest/gtest.h>

#include "blackboard/errors.hpp"
#include "blackboard/netgen.hpp"
#include "blackboard/rng.hpp"
#include "blackboard/rule_engine.hpp"
#include "exhaustive.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace bb = blackboard;
namespace bt = blackboard::testing;
using bb::ChangeKind;
using bb::FactId;

TEST(GenericRule, PromotionAddsManagerFactAndUpdatesTeam) {
  auto m = bt::make_promotion_model();
  ASSERT_TRUE(bb::check_generic_rule(m.network, m.promote, m.john_doe, m.front_desk));
  const auto changes = bb::apply_generic_rule_to_link(m.network, m.promote, m.john_to_desk);
  ASSERT_TRUE(changes);
  ASSERT_EQ(changes->records.size(), 2u);

  const auto& added = changes->records[0];
  EXPECT_EQ(added.kind, ChangeKind::FactAdded);
  EXPECT_EQ(added.container, m.john_doe);
  EXPECT_EQ(added.property, m.is_manager);
  EXPECT_TRUE(added.new_value);
  EXPECT_EQ(m.network.facts_with_property(m.john_doe, m.is_manager), std::vector<FactId>{added.fact});

  const auto& changed = changes->records[1];
  EXPECT_EQ(changed.kind, ChangeKind::FactChanged);
  EXPECT_EQ(changed.container, m.front_desk);
  EXPECT_EQ(changed.fact, m.desk_has_manager);
  EXPECT_TRUE(changed.new_value);
  EXPECT_TRUE(m.network.fact(m.desk_has_manager).value);
}

TEST(GenericRule, PromotionNeedsIgnoreFlagForAbsentManagerFact) {
  auto m = bt::make_promotion_model(false, true);
  const bb::Network before = m.network;
  EXPECT_FALSE(bb::check_generic_rule(m.network, m.promote, m.john_doe, m.front_desk));
  EXPECT_FALSE(bb::apply_generic_rule_to_link(m.network, m.promote, m.john_to_desk));
  EXPECT_EQ(m.network, before);
}

TEST(GenericRule, WithoutCreateFlagTheMissingFactStaysMissing) {
  auto m = bt::make_promotion_model(true, false);
  const auto changes = bb::apply_generic_rule_to_link(m.network, m.promote, m.john_to_desk);
  ASSERT_TRUE(changes);
  ASSERT_EQ(changes->records.size(), 1u);
  EXPECT_EQ(changes->records[0].kind, ChangeKind::FactChanged);
  EXPECT_TRUE(m.network.facts_with_property(m.john_doe, m.is_manager).empty());
}

TEST(GenericRule, ReversedLinkIsNotCompatibleWhenAbsenceCounts) {
  auto m = bt::make_promotion_model(false, true);
  auto back = m.network.add_link(m.front_desk, m.john_doe, "has member");
  EXPECT_FALSE(bb::apply_generic_rule_to_link(m.network, m.promote, back));
}

// With the ignore flag every before-run property on the reversed pair is
// simply absent, so the check passes.
TEST(GenericRule, ReversedLinkPassesWhenAbsenceIsIgnored) {
  auto m = bt::make_promotion_model(true, true);
  auto back = m.network.add_link(m.front_desk, m.john_doe, "has member");
  EXPECT_TRUE(bb::check_generic_rule(m.network, m.promote, m.front_desk, m.john_doe));
  EXPECT_TRUE(bb::apply_generic_rule_to_link(m.network, m.promote, back));
}

TEST(GenericRule, SecondApplicationIsBlockedByItsOwnEffect) {
  auto m = bt::make_promotion_model();
  ASSERT_TRUE(bb::apply_generic_rule_to_link(m.network, m.promote, m.john_to_desk));
  EXPECT_FALSE(bb::apply_generic_rule_to_link(m.network, m.promote, m.john_to_desk));
}

TEST(GenericRule, UnknownRuleOrContainerThrows) {
  auto m = bt::make_promotion_model();
  EXPECT_THROW(bb::check_generic_rule(m.network, bb::GenericRuleId{9}, m.john_doe, m.front_desk), bb::ModelError);
  EXPECT_THROW(bb::check_generic_rule(m.network, m.promote, bb::ContainerId{9}, m.front_desk), bb::ModelError);
  EXPECT_THROW(bb::apply_generic_rule_to_link(m.network, m.promote, bb::LinkId{9}), bb::ModelError);
}

TEST(GenericRule, MatchesBruteForceEvaluatorExhaustively) {
  const auto report = bt::run_exhaustive_generic_rule_comparison();
  EXPECT_EQ(report.mismatches, 0u) << report.first_mismatch;
  EXPECT_EQ(report.cases, 12u * 4u * 27u * 27u);
}

// Properties over generated rules on small random networks.
class GenericRuleProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(GenericRuleProperties, ExecuteIsIdempotentAndEstablishesAfterState) {
  bb::GenerationParams p;
  p.fact_count = 30;
  p.rule_count = 20;
  p.container_count = 6;
  p.link_count = 12;
  p.common_property_count = 8;
  p.properties_per_rule = 3;
  p.ignore_chance = 0.5;
  p.create_chance = 0.5;
  p.fact_assignment = bb::FactAssignment::Random;
  p.max_link_attempts = 100000;
  const bb::Network base = bb::generate_network(p, GetParam());

  for (const auto& [rid, rule] : base.generic_rules()) {
    for (const auto& [lid, link] : base.links()) {
      bb::Network n = base;
      bb::execute_generic_rule(n, rid, link.origin, link.destination);
      const bb::Network once = n;
      const auto again = bb::execute_generic_rule(n, rid, link.origin, link.destination);
      EXPECT_TRUE(again.records.empty());
      EXPECT_EQ(n, once);

      for (auto [side, list] : {std::pair{link.origin, &rule.after_one}, std::pair{link.destination, &rule.after_two}}) {
        for (const auto& cond : *list) {
          const auto facts = n.facts_with_property(side, cond.property);
          if (rule.create_if_not_present) {
            EXPECT_FALSE(facts.empty());
          }
          for (FactId f : facts) EXPECT_EQ(n.fact(f).value, cond.desired);
        }
      }
    }
  }
}

TEST_P(GenericRuleProperties, IgnoreFlagOnlyWidensTheMatch) {
  bb::GenerationParams p;
  p.fact_count = 20;
  p.rule_count = 30;
  p.container_count = 6;
  p.link_count = 12;
  p.common_property_count = 6;
  p.properties_per_rule = 2;
  p.max_link_attempts = 100000;
  bb::Network n = bb::generate_network(p, GetParam());
  const auto rules = n.generic_rules();
  for (const auto& [rid, original] : rules) {
    for (const auto& [lid, link] : n.links()) {
      auto strict = original;
      strict.ignore_if_not_present = false;
      n.replace_generic_rule(strict);
      const bool strict_ok = bb::check_generic_rule(n, rid, link.origin, link.destination);
      auto lenient = original;
      lenient.ignore_if_not_present = true;
      n.replace_generic_rule(lenient);
      const bool lenient_ok = bb::check_generic_rule(n, rid, link.origin, link.destination);
      EXPECT_TRUE(!strict_ok || lenient_ok);
    }
    n.replace_generic_rule(original);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GenericRuleProperties, ::testing::Values(1, 2, 3, 4, 5));

TEST(ApplyChangeSet, ReproducesExecution) {
  auto m = bt::make_promotion_model();
  const bb::Network before = m.network;
  const auto changes = bb::apply_generic_rule_to_link(m.network, m.promote, m.john_to_desk);
  ASSERT_TRUE(changes);
  bb::Network replayed = before;
  bb::apply_change_set(replayed, *changes);
  EXPECT_EQ(replayed, m.network);
}

TEST(BasicRule, FiresOnlyWhenAllInputsAreTrue) {
  bb::Network n;
  auto a = n.add_plain_fact("a", true);
  auto b = n.add_plain_fact("b", false);
  auto out = n.add_plain_fact("out", false);
  auto r = n.add(bb::BasicRule{bb::BasicRuleId{0}, {a, b}, {out}});
  auto firing = bb::evaluate_basic_rule(n, r);
  EXPECT_FALSE(firing.triggered);
  EXPECT_FALSE(n.fact(out).value);
  n.set_fact_value(b, true);
  firing = bb::evaluate_basic_rule(n, r);
  EXPECT_TRUE(firing.triggered);
  EXPECT_EQ(firing.flipped, std::vector<FactId>{out});
  firing = bb::evaluate_basic_rule(n, r);
  EXPECT_TRUE(firing.triggered);
  EXPECT_TRUE(firing.flipped.empty());
}

TEST(BasicRule, ChainPropagatesRegardlessOfRuleOrder) {
  bb::Network n;
  auto a = n.add_plain_fact("a", true);
  auto b = n.add_plain_fact("b", false);
  auto c = n.add_plain_fact("c", false);
  // Declared in reverse so a single ascending scan cannot finish the chain.
  n.add(bb::BasicRule{bb::BasicRuleId{0}, {b}, {c}});
  n.add(bb::BasicRule{bb::BasicRuleId{1}, {a}, {b}});
  EXPECT_EQ(bb::run_basic_inference(n), 2u);
  EXPECT_TRUE(n.fact(b).value);
  EXPECT_TRUE(n.fact(c).value);
  EXPECT_EQ(bb::run_basic_inference(n), 2u);
}

TEST(BasicRule, InferenceReachesTheOrderIndependentFixedPoint) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    bb::Rng rng(seed);
    bb::Network n;
    for (int i = 0; i < 12; ++i) n.add_plain_fact("f" + std::to_string(i), rng.chance(0.3));
    for (int r = 0; r < 10; ++r) {
      bb::BasicRule rule;
      rule.id = bb::BasicRuleId{static_cast<std::uint32_t>(r)};
      for (auto i : rng.sample(12, 1 + rng.below(3))) rule.inputs.push_back(FactId{static_cast<std::uint32_t>(i)});
      for (auto i : rng.sample(12, 1 + rng.below(2))) rule.outputs.push_back(FactId{static_cast<std::uint32_t>(i)});
      n.add(rule);
    }
    const auto expected = bt::fixed_point_descending(n);
    bb::run_basic_inference(n);
    for (const auto& [id, f] : n.facts()) EXPECT_EQ(f.value, expected.at(id)) << "seed " << seed;
  }
}
