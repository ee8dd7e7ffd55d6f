#include <gtest/gtest.h>

#include <filesystem>

#include "blackboard/errors.hpp"
#include "blackboard/harness.hpp"
#include "blackboard/persistence.hpp"
#include "blackboard/ticks.hpp"

namespace bb = blackboard;
namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("bb_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::size_t files_in(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

bb::ExperimentConfig small_config(const fs::path& out) {
  bb::ExperimentConfig c;
  c.base.fact_count = 40;
  c.base.rule_count = 20;
  c.base.container_count = 12;
  c.base.link_count = 24;
  c.base.common_property_count = 10;
  c.base.properties_per_rule = 3;
  c.sweep = {bb::SweepAxis{{"fact_count"}, {{"40"}, {"80"}}}};
  c.tests_per_combination = 2;
  c.out_dir = out;
  return c;
}

}  // namespace

TEST(Ticks, ConvertAtHundredNanoseconds) {
  EXPECT_EQ(bb::to_ticks(1us), 10);
  EXPECT_EQ(bb::to_ticks(0ns), 0);
  EXPECT_EQ(bb::to_ticks(150ns), 2);
  EXPECT_EQ(bb::to_ticks(149ns), 1);
  EXPECT_EQ(bb::to_ticks(1us, 1000), 1);
}

TEST(Harness, TestKeyJoinsCombinationAndTest) { EXPECT_EQ(bb::test_key(3, 12), "3_12"); }

TEST(Harness, RunTestAccountingAddsUp) {
  const auto dir = scratch("single");
  const bb::GenerationParams p;
  const auto r = bb::run_test(p, 4, 2, 99, dir);
  EXPECT_EQ(r.combination_id, 4u);
  EXPECT_EQ(r.test_id, 2u);
  EXPECT_GE(r.path_length, 25u);

  const auto save = dir / "saves" / "4_2.txt";
  EXPECT_EQ(r.initial_network_size, fs::file_size(save));
  std::uintmax_t state_bytes = 0;
  for (std::size_t i = 0; i < r.path_length; ++i) {
    state_bytes += fs::file_size(dir / "changes" / ("4_2-" + std::to_string(i) + ".txt"));
  }
  EXPECT_EQ(files_in(dir / "changes"), r.path_length);
  EXPECT_EQ(r.total_storage_size, r.initial_network_size + state_bytes);
  EXPECT_DOUBLE_EQ(r.avg_state_size, static_cast<double>(state_bytes) / static_cast<double>(r.path_length));
  EXPECT_DOUBLE_EQ(r.avg_time_to_state,
                   static_cast<double>(r.total_traversal_time) / static_cast<double>(r.path_length));

  // The saved network carries the path that was walked.
  const auto loaded = bb::load_network(save);
  ASSERT_TRUE(loaded.shortest_path());
  EXPECT_EQ(loaded.shortest_path()->size(), r.path_length);
  fs::remove_all(dir);
}

TEST(Harness, SweepWritesEveryArtifact) {
  const auto dir = scratch("sweep");
  const auto config = small_config(dir);
  const auto sweep = bb::run_sweep(config);
  ASSERT_EQ(sweep.combinations.size(), 2u);
  EXPECT_EQ(files_in(dir / "saves"), 4u);
  EXPECT_EQ(files_in(dir / "comboResults"), 2u);
  EXPECT_EQ(sweep.exported.averages.size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "results.csv"));
  EXPECT_EQ(sweep.combinations[1].tests[0].settings[0].value, "80");
  fs::remove_all(dir);
}

TEST(Harness, RunCombinationWritesItsCsv) {
  const auto dir = scratch("combo");
  const auto run = bb::run_combination(small_config(dir), 1);
  EXPECT_EQ(run.tests.size(), 2u);
  ASSERT_TRUE(run.average);
  EXPECT_TRUE(fs::exists(dir / "comboResults" / "1.csv"));
  EXPECT_THROW(bb::run_combination(small_config(dir), 7), bb::ConfigError);
  fs::remove_all(dir);
}

TEST(Harness, InfeasibleCombinationsAreCountedAsFailures) {
  const auto dir = scratch("fail");
  auto config = small_config(dir);
  config.sweep = {bb::SweepAxis{{"link_count"}, {{"1"}, {"24"}}}};
  config.base.max_link_attempts = 5;
  const auto sweep = bb::run_sweep(config);
  EXPECT_TRUE(sweep.combinations[0].tests.empty());
  EXPECT_EQ(sweep.combinations[0].failures.size(), 2u);
  EXPECT_EQ(sweep.combinations[1].tests.size(), 2u);
  fs::remove_all(dir);
}

TEST(Config, ExpansionIsOneFactorAtATime) {
  auto config = small_config("unused");
  config.assignments = {bb::FactAssignment::Uniform, bb::FactAssignment::Random};
  config.sweep.push_back(bb::SweepAxis{{"container_count", "link_count"}, {{"10", "30"}}});
  const auto combos = bb::expand_combinations(config);
  ASSERT_EQ(combos.size(), 6u);
  for (std::size_t i = 0; i < combos.size(); ++i) EXPECT_EQ(combos[i].id, i);
  EXPECT_EQ(combos[1].params.fact_assignment, bb::FactAssignment::Random);
  EXPECT_EQ(combos[2].params.fact_count, 80u);
  EXPECT_EQ(combos[4].params.container_count, 10u);
  EXPECT_EQ(combos[4].params.link_count, 30u);
  EXPECT_EQ(combos[4].params.fact_count, 40u);
}

TEST(Config, DefaultSweepIsValidAndCoversEveryParameter) {
  const auto config = bb::default_experiment_config();
  EXPECT_NO_THROW(config.validate());
  EXPECT_EQ(bb::expand_combinations(config).size(), 76u);
  EXPECT_EQ(config.tests_per_combination, 50u);
}

TEST(Config, ParsesBaseKeysAndSweepAxes) {
  const auto config = bb::parse_experiment_config(
      "# desk run\n"
      "fact_count = 120\n"
      "ignore_chance = 50%\n"
      "tests_per_combination = 5\n"
      "master_seed = 17\n"
      "jobs = 4\n"
      "out = somewhere\n"
      "assignments = Uniform, Random\n"
      "\n"
      "[sweep]\n"
      "rule_count = 50, 150\n"
      "container_count + link_count = 50:100, 100:200\n");
  EXPECT_EQ(config.base.fact_count, 120u);
  EXPECT_DOUBLE_EQ(config.base.ignore_chance, 0.5);
  EXPECT_EQ(config.tests_per_combination, 5u);
  EXPECT_EQ(config.master_seed, 17u);
  EXPECT_EQ(config.jobs, 4u);
  EXPECT_EQ(config.out_dir, fs::path("somewhere"));
  ASSERT_EQ(config.sweep.size(), 2u);
  EXPECT_EQ(config.sweep[1].parameters, (std::vector<std::string>{"container_count", "link_count"}));
  EXPECT_EQ(bb::expand_combinations(config).size(), 8u);

  const auto text = bb::format_experiment_config(config);
  EXPECT_EQ(bb::format_experiment_config(bb::parse_experiment_config(text)), text);
}

TEST(Config, RejectsMalformedInput) {
  const char* bad[] = {
      "fact_count 12\n",
      "bogus = 1\n",
      "fact_count = ten\n",
      "[elsewhere]\n",
      "[sweep]\ncontainer_count + link_count = 50\n",
      "[sweep]\ntests_per_combination = 1, 2\n",
      "tests_per_combination = 0\n",
      "jobs = 0\n",
      "[sweep]\nproperties_per_rule = 5, 80\n",
  };
  for (const char* text : bad) EXPECT_THROW(bb::parse_experiment_config(text), bb::ConfigError) << text;
}

TEST(Config, ParamsFileIsFlat) {
  const auto p = bb::parse_params("fact_count = 60\nfact_assignment = Random\n");
  EXPECT_EQ(p.fact_count, 60u);
  EXPECT_EQ(p.fact_assignment, bb::FactAssignment::Random);
  EXPECT_THROW(bb::parse_params("[sweep]\nfact_count = 1\n"), bb::ConfigError);
  EXPECT_THROW(bb::parse_params("jobs = 2\n"), bb::ConfigError);
}
