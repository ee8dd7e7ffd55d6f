#include <gtest/gtest.h>

#include <filesystem>

#include "blackboard/errors.hpp"
#include "blackboard/netgen.hpp"
#include "blackboard/persistence.hpp"
#include "blackboard/traversal.hpp"
#include "fixtures.hpp"

namespace bb = blackboard;
namespace bt = blackboard::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("bb_persistence_" + name);
  fs::remove_all(dir);
  return dir;
}

std::size_t count_lines(const std::string& text, std::string_view prefix) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
    pos = end == std::string::npos ? text.size() : end + 1;
  }
  return n;
}

}  // namespace

TEST(Persistence, FactLineFormat) {
  bb::Network n;
  for (int i = 0; i < 8; ++i) n.add_common_property("cp" + std::to_string(i));
  n.add(bb::Fact{bb::FactId{3}, true, bb::CommonPropertyId{7}});
  const auto text = bb::serialize_network(n);
  EXPECT_NE(text.find("\nfact,addition,3,7,True\n"), std::string::npos) << text;
}

TEST(Persistence, GenericRuleLineFormat) {
  bb::Network n;
  for (int i = 0; i < 3; ++i) n.add_common_property("cp" + std::to_string(i));
  bb::GenericRule r;
  r.title = "gr0";
  r.create_if_not_present = true;
  r.before_one = {{bb::CommonPropertyId{2}, true}};
  n.add(r);
  EXPECT_NE(bb::serialize_network(n).find("genericrule,addition,0,gr0,True,False,2-True,,,\n"), std::string::npos);
}

TEST(Persistence, EveryLineEndsWithOneNewline) {
  const auto text = bb::serialize_network(bt::make_promotion_model().network);
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find("\r"), std::string::npos);
  EXPECT_EQ(text.find("\n\n"), std::string::npos);
}

TEST(Persistence, FlippingOneFlagChangesSizeByOneByte) {
  auto m = bt::make_promotion_model(true, true);
  const auto with_true = bb::serialize_network(m.network).size();
  auto rule = m.network.generic_rule(m.promote);
  rule.ignore_if_not_present = false;
  m.network.replace_generic_rule(rule);
  EXPECT_EQ(bb::serialize_network(m.network).size(), with_true + 1);
}

TEST(Persistence, RoundTripIsExactForSeededNetworks) {
  const bb::GenerationParams p;
  const auto settings = bb::to_settings(p);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    bb::Network n = bb::generate_network(p, seed);
    n.set_shortest_path(bb::find_shortest_path(n).links);
    const auto text = bb::serialize_network(n, settings);
    const auto snap = bb::parse_network(text);
    EXPECT_EQ(snap.network, n);
    EXPECT_EQ(snap.settings, settings);
    EXPECT_EQ(bb::serialize_network(snap.network, snap.settings), text);
  }
}

TEST(Persistence, RoundTripCoversEveryEntityKind) {
  auto m = bt::make_promotion_model();
  auto& n = m.network;
  auto plain = n.add_plain_fact("raining", true);
  n.attach_fact(m.front_desk, plain);
  auto out = n.add_plain_fact("wet", false);
  n.add(bb::BasicRule{bb::BasicRuleId{0}, {plain}, {out}});
  n.add(bb::ActionStub{bb::ActionId{0}, "open umbrella"});
  n.set_endpoints(m.john_doe, m.front_desk);
  n.set_shortest_path({m.john_to_desk});
  const auto text = bb::serialize_network(n);
  EXPECT_EQ(bb::parse_network(text).network, n);
  EXPECT_EQ(count_lines(text, "plainfact,"), 2u);
  EXPECT_EQ(count_lines(text, "basicrule,"), 1u);
  EXPECT_EQ(count_lines(text, "action,"), 1u);
  EXPECT_EQ(count_lines(text, "shortest path,addition,0"), 1u);
}

TEST(Persistence, EmptyNetworkRoundTrips) {
  const bb::Network empty;
  const auto text = bb::serialize_network(empty);
  EXPECT_TRUE(text.empty());
  EXPECT_EQ(bb::parse_network(text).network, empty);
}

TEST(Persistence, TextWithCommasIsRejected) {
  bb::Network n;
  n.add_container("a,b");
  EXPECT_THROW(bb::serialize_network(n), bb::ModelError);
}

TEST(Persistence, MalformedLinesReportTheirLineNumber) {
  const std::string cases[] = {
      "commonproperty,addition,0,p\nfact,addition,0,0,Maybe\n",
      "commonproperty,addition,0,p\nfact,addition,0,5,True\n",
      "commonproperty,addition,0,p\nwidget,addition,0\n",
      "commonproperty,addition,0,p\ncontainer,addition,x,c\n",
      "commonproperty,addition,0,p\nlink,addition,0,0,1,l\n",
  };
  for (const auto& text : cases) {
    try {
      bb::parse_network(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const bb::ParseError& e) {
      EXPECT_EQ(e.line(), 2u) << text;
    }
  }
}

TEST(Persistence, ChangeFilesAreNumberedPerStep) {
  const auto dir = scratch("changes");
  bb::Network n = bb::generate_network(bb::GenerationParams{}, 5);
  const auto path = bb::find_shortest_path(n).links;
  const bb::Network initial = n;
  const auto report = bb::simulate_traversal(n, path);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto written = bb::write_change_file(dir, "7", report.steps[i]);
    EXPECT_EQ(written.path, dir / "changes" / ("7-" + std::to_string(i) + ".txt"));
    EXPECT_EQ(written.bytes, fs::file_size(written.path));
  }
  // Replaying every step from text reproduces the in-memory result.
  bb::Network replay = initial;
  for (const auto& step : report.steps) {
    const auto replayed = bb::apply_change_file(replay, bb::serialize_step(step));
    EXPECT_EQ(replayed.link, step.link);
    EXPECT_EQ(replayed.applied, step.applied);
  }
  EXPECT_EQ(replay, n);
  EXPECT_EQ(bb::network_digest(replay), bb::network_digest(n));
  fs::remove_all(dir);
}

TEST(Persistence, ChangeFileLineFormat) {
  auto m = bt::make_promotion_model();
  const std::vector<bb::LinkId> path{m.john_to_desk};
  const auto report = bb::simulate_traversal(m.network, path);
  const auto text = bb::serialize_step(report.steps[0]);
  EXPECT_EQ(text,
            "link,current,0\n"
            "genericrule,run,0\n"
            "fact,addition,3,1,True,0\n"
            "fact,change,2,True\n");
}

TEST(Persistence, SaveAndLoadThroughFiles) {
  const auto dir = scratch("saves");
  auto m = bt::make_promotion_model();
  const auto settings = bb::to_settings(bb::GenerationParams{});
  const auto written = bb::save_initial(m.network, settings, dir, "3_1");
  EXPECT_EQ(written.path, dir / "saves" / "3_1.txt");
  EXPECT_EQ(written.bytes, fs::file_size(written.path));
  EXPECT_EQ(bb::load_network(written.path), m.network);
  EXPECT_EQ(bb::load_snapshot(written.path).settings, settings);
  EXPECT_THROW(bb::load_network(dir / "missing.txt"), bb::IoError);
  fs::remove_all(dir);
}

TEST(Persistence, DigestTracksContent) {
  auto m = bt::make_promotion_model();
  const auto d = bb::network_digest(m.network);
  EXPECT_EQ(d.size(), 16u);
  m.network.set_fact_value(m.desk_has_manager, true);
  EXPECT_NE(bb::network_digest(m.network), d);
}
